    var BasicGame = {
    //global variables
    timerDelay : 400,   //snake movement delay
    score : 0,          //current score
    highscore : null,   //object to store highscores
    currentMode : 'E',  //current play mode - easy/medium/hard
    trailno : 6,        //length of the trailing snake effect
    textList : null   //object to hold parsed game text
};
