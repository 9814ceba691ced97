//! Random JavaScript programs with known ground truth, plus small oracles.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A generated program and the facts it was built to have.
#[derive(Debug, Clone)]
pub struct Generated {
    pub text: String,
    /// Parameter count of every function, in source order.
    pub params: Vec<usize>,
    /// Non-default case count of every switch, in source order.
    pub cases: Vec<usize>,
    /// Length of every maximal member/call chain, sorted.
    pub chains: Vec<usize>,
    /// Callback depth of every callback, sorted.
    pub callback_depths: Vec<usize>,
    /// Names the program defines as globals.
    pub globals: BTreeSet<String>,
    /// Lines holding at least one code token.
    pub loc: usize,
}

struct Gen {
    rng: ChaCha8Rng,
    prefix: String,
    next: usize,
    lines: Vec<(String, bool)>,
    params: Vec<usize>,
    cases: Vec<usize>,
    chains: Vec<usize>,
    callbacks: Vec<usize>,
    globals: BTreeSet<String>,
}

impl Gen {
    fn name(&mut self, stem: &str) -> String {
        self.next += 1;
        format!("{}{stem}{}", self.prefix, self.next)
    }

    fn code(&mut self, indent: usize, text: &str) {
        let trailing = if self.rng.gen_bool(0.1) { " // note" } else { "" };
        self.lines.push((format!("{}{text}{trailing}", "  ".repeat(indent)), true));
    }

    fn noise(&mut self, indent: usize) {
        let pad = "  ".repeat(indent);
        match self.rng.gen_range(0..10) {
            0 => self.lines.push((String::new(), false)),
            1 => self.lines.push((format!("{pad}// x = 1; see http://example.com"), false)),
            2 => self.lines.push((format!("{pad}/* fold */"), false)),
            3 => {
                self.lines.push((format!("{pad}/*"), false));
                self.lines.push((format!("{pad} * var hidden = 1;"), false));
                self.lines.push((format!("{pad} */"), false));
            }
            _ => {}
        }
    }

    fn params(&mut self) -> String {
        let n = self.rng.gen_range(0..7);
        self.params.push(n);
        let names: Vec<String> = (0..n).map(|_| self.name("a")).collect();
        names.join(", ")
    }

    fn chain(&mut self, indent: usize) {
        let root = self.name("r");
        let members = self.rng.gen_range(1..7);
        let mut text = root;
        for i in 0..members {
            text.push_str(&format!(".m{i}"));
        }
        let call = self.rng.gen_bool(0.4);
        if call {
            text.push_str("()");
        }
        self.chains.push(members + usize::from(call));
        self.code(indent, &format!("{text};"));
    }

    fn switch(&mut self, indent: usize) {
        let cases = self.rng.gen_range(0..7);
        self.cases.push(cases);
        self.code(indent, "switch (sw) {");
        for i in 0..cases {
            self.code(indent + 1, &format!("case {i}: break;"));
        }
        if self.rng.gen_bool(0.5) {
            self.code(indent + 1, "default: break;");
        }
        self.code(indent, "}");
    }

    fn body(&mut self, indent: usize, depth: usize, callback_depth: usize) {
        let count = self.rng.gen_range(0..5);
        for _ in 0..count {
            self.noise(indent);
            match self.rng.gen_range(0..8) {
                0 => self.chain(indent),
                1 => {
                    let g = self.name("u");
                    self.globals.insert(g.clone());
                    self.code(indent, &format!("{g} = 1;"));
                }
                2 => {
                    let l = self.name("l");
                    self.code(indent, &format!("var {l} = \"//not a comment\";"));
                }
                3 => self.switch(indent),
                4 if depth < 6 => self.function(indent, depth + 1, callback_depth, false),
                5 if depth < 6 => self.callback(indent, depth + 1, callback_depth + 1),
                6 => {
                    let r = self.name("r");
                    self.chains.push(1);
                    self.code(indent, &format!("try {{ {r}(); }} catch (e) {{}}"));
                }
                _ => self.chain(indent),
            }
        }
    }

    fn function(&mut self, indent: usize, depth: usize, callback_depth: usize, top: bool) {
        let name = self.name("f");
        if top {
            self.globals.insert(name.clone());
        }
        let params = self.params();
        self.code(indent, &format!("function {name}({params}) {{"));
        self.body(indent + 1, depth, callback_depth);
        self.code(indent, "}");
    }

    fn callback(&mut self, indent: usize, depth: usize, callback_depth: usize) {
        self.chains.push(1);
        self.callbacks.push(callback_depth);
        let params = self.params();
        self.code(indent, &format!("run(function ({params}) {{"));
        self.body(indent + 1, depth, callback_depth);
        self.code(indent, "});");
    }

    fn top_level(&mut self) {
        let items = self.rng.gen_range(3..13);
        for _ in 0..items {
            self.noise(0);
            match self.rng.gen_range(0..7) {
                0 => {
                    let g = self.name("g");
                    self.globals.insert(g.clone());
                    self.code(0, &format!("var {g} = {};", self.next));
                }
                1 => {
                    let w = self.name("w");
                    self.globals.insert(w.clone());
                    self.chains.push(1);
                    self.code(0, &format!("window.{w} = 1;"));
                }
                2 | 3 => self.function(0, 1, 0, true),
                4 => {
                    let o = self.name("o");
                    self.globals.insert(o.clone());
                    let props = self.rng.gen_range(0..25);
                    if props == 0 {
                        self.code(0, &format!("var {o} = {{}};"));
                    } else {
                        self.code(0, &format!("var {o} = {{"));
                        for i in 0..props {
                            let sep = if i + 1 < props { "," } else { "" };
                            self.code(1, &format!("p{i}: {i}{sep}"));
                        }
                        self.code(0, "};");
                    }
                }
                5 => self.callback(0, 1, 1),
                _ => self.chain(0),
            }
        }
    }
}

/// Generates a program from `seed`; `prefix` keeps names disjoint across files.
pub fn generate_with_prefix(seed: u64, prefix: &str) -> Generated {
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        prefix: prefix.to_string(),
        next: 0,
        lines: Vec::new(),
        params: Vec::new(),
        cases: Vec::new(),
        chains: Vec::new(),
        callbacks: Vec::new(),
        globals: BTreeSet::new(),
    };
    g.top_level();
    let loc = g.lines.iter().filter(|(_, code)| *code).count();
    let mut text: String = g.lines.iter().map(|(l, _)| format!("{l}\n")).collect();
    if g.rng.gen_bool(0.2) {
        text.pop();
    }
    g.chains.sort_unstable();
    g.callbacks.sort_unstable();
    Generated {
        text,
        params: g.params,
        cases: g.cases,
        chains: g.chains,
        callback_depths: g.callbacks,
        globals: g.globals,
        loc,
    }
}

pub fn generate(seed: u64) -> Generated {
    generate_with_prefix(seed, "")
}

/// A small game: a few generated scripts plus an HTML page wiring them up.
pub fn generate_game(seed: u64) -> Vec<(String, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..5);
    let mut files: Vec<(String, String)> = (0..n)
        .map(|i| (format!("js/part{i}.js"), generate_with_prefix(rng.gen(), &format!("p{i}_")).text))
        .collect();
    let scripts: String = (0..n).map(|i| format!("  <script src=\"js/part{i}.js\"></script>\n")).collect();
    let html = format!(
        "<html>\n<body onload=\"start()\">\n{scripts}  <script>\n    var booted = false;\n    try {{ boot(); }} catch (e) {{}}\n  </script>\n</body>\n</html>\n"
    );
    files.push(("index.html".to_string(), html));
    files.push(("js/extras.js".to_string(), extras(&mut rng)));
    files
}

/// Constructs the plain generator never emits: inheritance, HTML strings,
/// long functions, loops with allocations, input handlers, same-shape literals.
fn extras(rng: &mut ChaCha8Rng) -> String {
    let mut out = String::new();
    let methods = rng.gen_range(0..8);
    let used = rng.gen_range(0..=methods);
    let parent: Vec<String> = (0..methods).map(|i| format!("m{i}() {{ return {i}; }}")).collect();
    let calls: Vec<String> = (0..used).map(|i| format!("this.m{i}();")).collect();
    out.push_str(&format!("class Base {{ {} }}
", parent.join(" ")));
    out.push_str(&format!("class Child extends Base {{ run() {{ {} }} }}
", calls.join(" ")));

    let tags = rng.gen_range(0..5);
    let markup: String = (0..tags).map(|i| format!("<p class='c{i}'>x</p>")).collect();
    out.push_str(&format!("panel.innerHTML = \"{markup}\";\n"));

    let lines = rng.gen_range(40..70);
    out.push_str("function update(dt) {\n");
    for i in 0..lines {
        out.push_str(&format!("  step{i}(dt, {{ at: {i} }});\n"));
    }
    out.push_str("  ctx.drawImage(sprite, 0, 0);\n");
    if rng.gen_bool(0.5) {
        out.push_str("  sfx.play();\n");
    }
    out.push_str("}\n");

    let loops = rng.gen_range(0..3);
    for i in 0..loops {
        out.push_str(&format!("function spawn{i}(n) {{ var out = []; for (var i = 0; i < n; i++) {{ out.push(new Enemy(i)); }} return out; }}\n"));
    }
    if rng.gen_bool(0.5) {
        out.push_str("document.addEventListener('keydown', function (e) { keys[e.keyCode] = true; });\n");
    }
    let group = rng.gen_range(1..5);
    let decls: Vec<String> = (0..group).map(|i| format!("s{i} = {{x: {i}, y: 0, w: 1, h: null}}")).collect();
    out.push_str(&format!("var {};\n", decls.join(", ")));
    let reads = rng.gen_range(0..3);
    for i in 0..reads {
        out.push_str(&format!("function read{i}() {{ return s0.x + s0.w; }}\n"));
    }
    let cases = rng.gen_range(0..6);
    let arms: String = (0..cases).map(|i| format!("case {i}: go({i}); break; ")).collect();
    out.push_str(&format!("function route(k) {{ switch (k) {{ {arms}}} }}\n"));
    out
}

/// Independent line classifier: counts lines with a character outside
/// comments and whitespace. Understands `//`, `/* */` and quoted strings.
pub fn scan_loc(text: &str) -> usize {
    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Code,
        Block,
        Str(char),
    }
    let mut state = State::Code;
    let mut count = 0;
    for line in text.lines() {
        let chars: Vec<char> = line.chars().collect();
        let mut code = matches!(state, State::Str(_));
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let next = chars.get(i + 1).copied();
            match state {
                State::Block => {
                    if c == '*' && next == Some('/') {
                        state = State::Code;
                        i += 1;
                    }
                }
                State::Str(q) => {
                    code = true;
                    if c == '\\' {
                        i += 1;
                    } else if c == q {
                        state = State::Code;
                    }
                }
                State::Code => {
                    if c == '/' && next == Some('/') {
                        break;
                    } else if c == '/' && next == Some('*') {
                        state = State::Block;
                        i += 1;
                    } else if c == '"' || c == '\'' || c == '`' {
                        code = true;
                        state = State::Str(c);
                    } else if !c.is_whitespace() {
                        code = true;
                    }
                }
            }
            i += 1;
        }
        if let State::Str(q) = state {
            if q != '`' {
                state = State::Code;
            }
            code = true;
        }
        count += usize::from(code);
    }
    count
}
