//! Acceptance run: one PASS/FAIL line per criterion; exits non-zero if any fail.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use gamesmell::{run, Mode, Report, RunOptions};
use gamesmell_core::corpus::{analyze_units, GameReport, StatsAccumulator};
use gamesmell_core::frontend::visit::function_sites;
use gamesmell_core::frontend::{build_scopes, count_loc, extract_chains, parse_source, NodeKind, SourceKind, SourceUnit};
use gamesmell_core::game::GameUnits;
use gamesmell_core::patterns::{detect_pattern, run_patterns};
use gamesmell_core::smells::{callback_depths, case_count, run_smells};
use gamesmell_core::{AnalysisConfig, Kind, PatternKind, SmellKind};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOLERANCE: f64 = 0.015;
const GAMES: u64 = 361;
const TOTALS: [u64; 13] = [256687, 247, 1361, 8737, 0, 471533, 365789, 51816, 39028, 6233, 88606, 5885, 70];
const REFERENCE_AVG: [f64; 13] =
    [711.04, 0.68, 3.77, 24.20, 0.0, 1306.18, 1013.26, 143.53, 108.11, 17.26, 245.44, 16.30, 0.19];
const REFERENCE_PCT: [f64; 13] = [19.80, 0.01, 0.1, 0.67, 0.0, 36.3, 28.22, 3.99, 3.01, 0.48, 6.83, 0.45, 0.005];

type Outcome = Result<String, String>;
type Fixture = (SmellKind, Vec<(&'static str, String)>, usize);

fn js_unit(path: &str, text: &str) -> SourceUnit {
    let kind = if path.ends_with(".html") { SourceKind::Html } else { SourceKind::Js };
    parse_source(path, text, kind)
}

fn all_kinds() -> BTreeSet<Kind> {
    Kind::all().collect()
}

fn table_arithmetic() -> Outcome {
    let start = Instant::now();
    let mut acc = StatsAccumulator { n_games: GAMES, ..Default::default() };
    for (kind, total) in SmellKind::ALL.iter().zip(TOTALS) {
        acc.total.insert(Kind::Smell(*kind), total);
    }
    let stats = acc.finish();
    let mut misses = Vec::new();
    for (i, kind) in SmellKind::ALL.iter().enumerate() {
        let k = Kind::Smell(*kind);
        let avg = stats.avg_per_game[&k];
        let pct = stats.pct_of_all[&k];
        if (avg - REFERENCE_AVG[i]).abs() > TOLERANCE {
            misses.push(format!("{k} average {avg:.4} vs {}", REFERENCE_AVG[i]));
        }
        if (pct - REFERENCE_PCT[i]).abs() > TOLERANCE {
            misses.push(format!("{k} share {pct:.4} vs {}", REFERENCE_PCT[i]));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(1) {
        misses.push(format!("took {elapsed:?}"));
    }
    if misses.is_empty() {
        Ok("26 cells within 0.015".to_string())
    } else {
        Err(format!("{} of 26 cells outside 0.015: {}", misses.len(), misses.join("; ")))
    }
}

fn snippets_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/snippets")
}

fn snippet_fixtures() -> Outcome {
    let start = Instant::now();
    let cases = [
        ("Preloader.js", PatternKind::P1),
        ("Storage.js", PatternKind::P2),
        ("Boot.js", PatternKind::P3),
        ("keyboard.js", PatternKind::P4),
    ];
    let count = |file: &str, kind: PatternKind| {
        let text = std::fs::read_to_string(snippets_dir().join(file)).expect("fixture");
        let game = GameUnits::new(vec![js_unit(file, &text)]);
        detect_pattern(kind, &game.scripts(), &AnalysisConfig::default()).len()
    };
    let mut notes = Vec::new();
    let mut ok = true;
    for (file, kind) in cases {
        let before = count(file, kind);
        let after = count(&format!("refactored/{file}"), kind);
        ok &= before >= 1 && after == 0;
        notes.push(format!("{file} {} {before}->{after}", kind.code()));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(5);
    let detail = format!("{} in {elapsed:?}", notes.join(", "));
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn definitional_suite() -> Outcome {
    let long_body: String = (0..51).map(|i| format!("  call{i}();\n")).collect();
    let globals: String = (0..11).map(|i| format!("var g{i} = {i};\n")).collect();
    let large: Vec<String> = (0..20).map(|i| format!("p{i}: {i}")).collect();
    let fixtures: Vec<Fixture> = vec![
        (SmellKind::S1, vec![("a.js", "function a(){ function b(){ function c(){ function d(){} d(); } c(); } b(); }\na();".into())], 1),
        (SmellKind::S2, vec![("index.html", "<button onclick=\"go()\">Go</button>".into())], 1),
        (SmellKind::S3, vec![("a.js", "try { f(); } catch (e) {}".into())], 1),
        (SmellKind::S4, vec![("a.js", globals)], 11),
        (SmellKind::S5, vec![("a.js", format!("var big = {{{}}};\nbig.p0;", large.join(", ")))], 1),
        (SmellKind::S6, vec![("a.js", "var o = {x: 1};\no.x;".into())], 1),
        (SmellKind::S7, vec![("a.js", "a.b.c.d.e;".into())], 1),
        (SmellKind::S8, vec![("a.js", format!("function f() {{\n{long_body}}}\nf();"))], 1),
        (SmellKind::S9, vec![("a.js", "function f(a, b, c, d, e) {}\nf();".into())], 1),
        (SmellKind::S10, vec![("a.js", "f(x => g(y => h(z => k)));".into())], 1),
        (
            SmellKind::S11,
            vec![
                ("a.js", "class A { a(){} b(){} c(){} d(){} e(){} f(){} }".into()),
                ("b.js", "class B extends A { run(){ this.a(); } }\nnew B();".into()),
            ],
            1,
        ),
        (SmellKind::S12, vec![("a.js", "switch (k) { case 1: break; case 2: break; case 3: break; }".into())], 1),
        (SmellKind::S13, vec![("a.js", "function f() { return 1; x(); }\nf();".into())], 1),
    ];
    let mut wrong = Vec::new();
    for (kind, files, expected) in &fixtures {
        let units = files.iter().map(|(p, t)| js_unit(p, t)).collect();
        let report = analyze_units("fixture", units, &AnalysisConfig::default(), &[Kind::Smell(*kind)].into());
        let got = report.count(Kind::Smell(*kind));
        if got != *expected {
            wrong.push(format!("{} expected {expected} got {got}", kind.code()));
        }
    }
    if wrong.is_empty() {
        Ok("13 fixtures match".to_string())
    } else {
        Err(wrong.join("; "))
    }
}

type Tighten = fn(&mut AnalysisConfig);
type Criterion = fn() -> Outcome;

const TIGHTENINGS: [(&str, Tighten); 16] = [
    ("closure_depth", |c| c.closure_depth += 1),
    ("globals_max", |c| c.globals_max += 1),
    ("large_object_props", |c| c.large_object_props += 1),
    ("lazy_object_props", |c| c.lazy_object_props = c.lazy_object_props.saturating_sub(1).max(1)),
    ("chain_min", |c| c.chain_min += 1),
    ("method_loc_max", |c| c.method_loc_max += 1),
    ("params_max", |c| c.params_max += 1),
    ("callback_depth", |c| c.callback_depth += 1),
    ("bequest_ratio", |c| c.bequest_ratio = (c.bequest_ratio - 0.1).max(0.01)),
    ("switch_cases_min", |c| c.switch_cases_min += 1),
    ("html_string_min_tags", |c| c.html_string_min_tags += 1),
    ("component_min_categories", |c| c.component_min_categories += 1),
    ("monolithic_methods", |c| c.monolithic_methods += 1),
    ("monolithic_loc", |c| c.monolithic_loc += 1),
    ("hot_struct_min_props", |c| c.hot_struct_min_props += 1),
    ("parallel_objects_min", |c| c.parallel_objects_min += 1),
];

fn kind_counts(game: &GameUnits, cfg: &AnalysisConfig) -> BTreeMap<Kind, usize> {
    let mut counts: BTreeMap<Kind, usize> = Kind::all().map(|k| (k, 0)).collect();
    let found = run_smells(game, &all_kinds(), cfg).into_iter().chain(run_patterns(game, &all_kinds(), cfg));
    for f in found {
        *counts.get_mut(&f.kind).unwrap() += 1;
    }
    counts
}

fn monotonicity() -> Outcome {
    let start = AnalysisConfig {
        closure_depth: 2,
        globals_max: 3,
        large_object_props: 5,
        chain_min: 2,
        method_loc_max: 20,
        params_max: 2,
        callback_depth: 1,
        switch_cases_min: 1,
        html_string_min_tags: 1,
        monolithic_methods: 3,
        monolithic_loc: 20,
        ..AnalysisConfig::default()
    };
    let mut violations = Vec::new();
    for seed in 0..100u64 {
        let files: Vec<SourceUnit> = common::generate_game(seed).iter().map(|(p, t)| js_unit(p, t)).collect();
        let game = GameUnits::new(files);
        for (name, tighten) in TIGHTENINGS {
            let mut cfg = start.clone();
            let mut before = kind_counts(&game, &cfg);
            for _ in 0..2 {
                tighten(&mut cfg);
                let after = kind_counts(&game, &cfg);
                for (kind, n) in &after {
                    if *n > before[kind] {
                        violations.push(format!("seed {seed} {name} {kind}"));
                    }
                }
                before = after;
            }
        }
    }
    if violations.is_empty() {
        Ok("100 programs x 16 thresholds non-increasing".to_string())
    } else {
        Err(violations.join("; "))
    }
}

fn oracle_equivalence() -> Outcome {
    let mut mismatches = Vec::new();
    for seed in 0..200u64 {
        let g = common::generate(seed);
        let unit = parse_source("gen.js", &g.text, SourceKind::Js);
        let Some(ast) = &unit.ast else {
            mismatches.push(format!("seed {seed}: parse failed"));
            continue;
        };
        let params: Vec<usize> = function_sites(ast).iter().map(|s| s.node.params().len()).collect();
        let mut cases = Vec::new();
        ast.walk(&mut |n| {
            if n.kind == NodeKind::SwitchStmt {
                cases.push(case_count(n));
            }
        });
        let mut chains: Vec<usize> = extract_chains(&unit).iter().map(|c| c.length).collect();
        chains.sort_unstable();
        let mut depths: Vec<usize> = callback_depths(ast).into_iter().map(|(_, d, _)| d).collect();
        depths.sort_unstable();
        let globals = build_scopes(&unit).defined_global_names();
        let loc = count_loc(unit.full_span(), &unit);
        let checks = [
            ("params", params == g.params),
            ("cases", cases == g.cases),
            ("chains", chains == g.chains),
            ("callbacks", depths == g.callback_depths),
            ("globals", globals == g.globals),
            ("loc", loc == g.loc && common::scan_loc(&g.text) == g.loc),
        ];
        for (name, ok) in checks {
            if !ok {
                mismatches.push(format!("seed {seed}: {name}"));
            }
        }
    }
    if mismatches.is_empty() {
        Ok("200 programs, 6 quantities exact".to_string())
    } else {
        Err(mismatches.join("; "))
    }
}

fn determinism() -> Outcome {
    let cfg = AnalysisConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let games: Vec<Vec<(String, String)>> = (0..8).map(|i| common::generate_game(1000 + i)).collect();
    let build = |rng: &mut ChaCha8Rng, shuffle: bool| {
        let mut reports: Vec<GameReport> = games
            .iter()
            .enumerate()
            .map(|(i, files)| {
                let mut units: Vec<SourceUnit> = files.iter().map(|(p, t)| js_unit(p, t)).collect();
                if shuffle {
                    units.shuffle(rng);
                }
                analyze_units(&format!("game{i}"), units, &cfg, &all_kinds())
            })
            .collect();
        if shuffle {
            reports.shuffle(rng);
        }
        Report::new(cfg.clone(), reports)
    };
    let reference = build(&mut rng, false);
    let bytes = reference.to_json();
    for _ in 0..5 {
        if build(&mut rng, true).to_json() != bytes {
            return Err("JSON changed under shuffling".to_string());
        }
    }
    if Report::from_json(&bytes).map(|r| r.to_json()).ok().as_deref() != Some(bytes.as_str()) {
        return Err("JSON does not round-trip".to_string());
    }
    for trial in 0..20 {
        let mut parts: Vec<StatsAccumulator> = (0..rng.gen_range(1..5)).map(|_| StatsAccumulator::default()).collect();
        for report in &reference.games {
            let k = rng.gen_range(0..parts.len());
            parts[k].add(report);
        }
        let merged = parts.into_iter().rev().fold(StatsAccumulator::default(), |acc, p| p.merge(acc));
        if merged.finish() != reference.stats {
            return Err(format!("partition {trial} changed the stats"));
        }
    }
    Ok("JSON identical over 5 shuffles; 20 partitions merge to the same stats".to_string())
}

fn corpus_smoke() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut manifest = String::from("game_id,root,stars,issues,category,url\n");
    for g in 0..30u64 {
        let root = dir.path().join(format!("game{g:02}"));
        for (path, text) in common::generate_game(5000 + g) {
            let file = root.join(path);
            std::fs::create_dir_all(file.parent().unwrap()).map_err(|e| e.to_string())?;
            std::fs::write(file, text).map_err(|e| e.to_string())?;
        }
        manifest.push_str(&format!("game{g:02},game{g:02},{g},0,arcade,\n"));
    }
    let manifest_path = dir.path().join("games.csv");
    std::fs::write(&manifest_path, manifest).map_err(|e| e.to_string())?;
    let stats_path = dir.path().join("stats.csv");
    let mut options = RunOptions::new(Mode::Corpus, vec![manifest_path]);
    options.stats_csv = Some(stats_path.clone());
    let start = Instant::now();
    let outcome = run(&options);
    let elapsed = start.elapsed();
    let csv = std::fs::read_to_string(&stats_path).map_err(|e| e.to_string())?;
    let rows: Vec<Vec<&str>> = csv.lines().map(|l| l.split(',').collect()).collect();
    let header: Vec<String> =
        std::iter::once("Statistics".to_string()).chain((1..=13).map(|i| format!("S{i}"))).collect();
    let labels = ["Number of smells", "Average smell in each game", "% out of all smells", "% of games containing smell"];
    let layout = rows.len() == 5
        && rows[0] == header.iter().map(String::as_str).collect::<Vec<_>>()
        && rows[1..].iter().zip(labels).all(|(r, l)| r.len() == 14 && r[0] == l);
    let detail = format!("30 games in {elapsed:?}, exit {}", outcome.code);
    if outcome.code == 0 && layout && elapsed < Duration::from_secs(30) {
        Ok(detail)
    } else {
        Err(format!("{detail}, layout ok = {layout}"))
    }
}

fn main() {
    let criteria: [(&str, Criterion); 7] = [
        ("statistics arithmetic", table_arithmetic),
        ("snippet fixtures", snippet_fixtures),
        ("smell definitional suite", definitional_suite),
        ("threshold monotonicity", monotonicity),
        ("oracle equivalence", oracle_equivalence),
        ("determinism and permutation invariance", determinism),
        ("corpus smoke", corpus_smoke),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
