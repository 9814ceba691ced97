mod common;

use std::collections::{BTreeMap, BTreeSet};

use gamesmell_core::corpus::{aggregate_stats, GameReport, StatsAccumulator};
use gamesmell_core::frontend::ast::isomorphic;
use gamesmell_core::frontend::printer::print_program;
use gamesmell_core::frontend::{parse_source, SourceKind, SourceUnit};
use gamesmell_core::game::GameUnits;
use gamesmell_core::patterns::run_patterns;
use gamesmell_core::smells::run_smells;
use gamesmell_core::{AnalysisConfig, Finding, Kind, PatternKind};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn units(files: &[(String, String)]) -> Vec<SourceUnit> {
    files
        .iter()
        .map(|(path, text)| {
            let kind = if path.ends_with(".html") { SourceKind::Html } else { SourceKind::Js };
            parse_source(path, text, kind)
        })
        .collect()
}

fn findings(game: &GameUnits, cfg: &AnalysisConfig) -> Vec<Finding> {
    let all: BTreeSet<Kind> = Kind::all().collect();
    let mut out = run_smells(game, &all, cfg);
    out.extend(run_patterns(game, &all, cfg));
    out
}

fn counts(found: &[Finding]) -> BTreeMap<Kind, usize> {
    let mut map: BTreeMap<Kind, usize> = Kind::all().map(|k| (k, 0)).collect();
    for f in found {
        *map.get_mut(&f.kind).unwrap() += 1;
    }
    map
}

type Tighten = fn(&mut AnalysisConfig);

/// Each entry moves one threshold one step in the direction that can only
/// remove findings.
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

/// Starting points low enough that generated games trip most detectors.
fn loose() -> AnalysisConfig {
    AnalysisConfig {
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
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn thresholds_are_monotone(seed in any::<u64>()) {
        let game = GameUnits::new(units(&common::generate_game(seed)));
        for start in [loose(), AnalysisConfig::default()] {
            for (name, tighten) in TIGHTENINGS {
                let mut cfg = start.clone();
                let mut before = counts(&findings(&game, &cfg));
                for _ in 0..3 {
                    tighten(&mut cfg);
                    let after = counts(&findings(&game, &cfg));
                    for (kind, n) in &after {
                        prop_assert!(*n <= before[kind], "{name}: {kind} rose from {} to {n}", before[kind]);
                    }
                    before = after;
                }
            }
        }
    }

    #[test]
    fn file_order_does_not_matter(seed in any::<u64>()) {
        let files = common::generate_game(seed);
        let cfg = AnalysisConfig::default();
        let expected = findings(&GameUnits::new(units(&files)), &cfg);
        let mut shuffled = files.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
        let mut a = findings(&GameUnits::new(units(&shuffled)), &cfg);
        let mut b = expected.clone();
        gamesmell_core::finding::sort_findings(&mut a);
        gamesmell_core::finding::sort_findings(&mut b);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn reparse_is_stable(seed in any::<u64>()) {
        for (path, text) in common::generate_game(seed).iter().filter(|(p, _)| p.ends_with(".js")) {
            let unit = parse_source(path, text, SourceKind::Js);
            prop_assert!(unit.diagnostics.is_empty(), "{:?}\n{}", unit.diagnostics, text);
            let ast = unit.ast.as_ref().unwrap();
            let printed = print_program(ast);
            let again = parse_source(path, &printed, SourceKind::Js);
            prop_assert!(again.diagnostics.is_empty(), "{:?}\n{}", again.diagnostics, printed);
            prop_assert!(isomorphic(ast, again.ast.as_ref().unwrap()));
        }
    }

    #[test]
    fn removing_lexicon_entries_never_adds_findings(seed in any::<u64>()) {
        let game = GameUnits::new(units(&common::generate_game(seed)));
        let p1: BTreeSet<Kind> = [Kind::Pattern(PatternKind::P1)].into();
        let p4: BTreeSet<Kind> = [Kind::Pattern(PatternKind::P4)].into();
        let base = AnalysisConfig::default();
        let p1_count = run_patterns(&game, &p1, &base).len();
        let hot = |cfg: &AnalysisConfig| {
            run_patterns(&game, &p4, cfg).iter().filter(|f| f.subkind.as_deref() == Some("hot-function-alloc")).count()
        };
        let hot_count = hot(&base);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);

        let mut cfg = base.clone();
        let category = cfg.component_lexicon.categories.keys().nth(rng.gen_range(0..6)).unwrap().clone();
        cfg.component_lexicon.categories.remove(&category);
        prop_assert!(run_patterns(&game, &p1, &cfg).len() <= p1_count);

        let mut cfg = base.clone();
        for patterns in cfg.component_lexicon.categories.values_mut() {
            let i = rng.gen_range(0..patterns.len());
            patterns.remove(i);
        }
        prop_assert!(run_patterns(&game, &p1, &cfg).len() <= p1_count);

        let mut cfg = base.clone();
        let i = rng.gen_range(0..cfg.hot_path_lexicon.name_patterns.len());
        cfg.hot_path_lexicon.name_patterns.remove(i);
        prop_assert!(hot(&cfg) <= hot_count);
    }

    #[test]
    fn independent_programs_compose(a in any::<u64>(), b in any::<u64>()) {
        let local: BTreeSet<&str> = ["S1", "S3", "S5", "S6", "S7", "S8", "S9", "S10", "S12"].into();
        let run = |text: &str| -> Vec<(Kind, String, Option<String>)> {
            let game = GameUnits::new(vec![parse_source("a.js", text, SourceKind::Js)]);
            let mut out: Vec<_> = findings(&game, &AnalysisConfig::default())
                .into_iter()
                .filter(|f| local.contains(f.kind.code()))
                .map(|f| (f.kind, f.evidence, f.subkind))
                .collect();
            out.sort();
            out
        };
        let left = common::generate_with_prefix(a, "x_").text;
        let right = common::generate_with_prefix(b, "y_").text;
        let mut separate = run(&left);
        separate.extend(run(&right));
        separate.sort();
        prop_assert_eq!(run(&format!("{left}\n{right}")), separate);
    }
}

fn synthetic_reports(rng: &mut ChaCha8Rng, n: usize) -> Vec<GameReport> {
    (0..n)
        .map(|i| {
            let counts: BTreeMap<Kind, usize> =
                Kind::all().map(|k| (k, if rng.gen_bool(0.4) { 0 } else { rng.gen_range(0..500) })).collect();
            GameReport {
                game_id: format!("g{i}"),
                meta: None,
                file_count: 1,
                js_loc: 0,
                counts,
                findings: Vec::new(),
                diagnostics: Vec::new(),
                minified_files: Vec::new(),
            }
        })
        .collect()
}

#[test]
fn stats_merge_is_associative_and_order_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let n = rng.gen_range(0..40);
        let reports = synthetic_reports(&mut rng, n);
        let whole = aggregate_stats(&reports);

        let mut shuffled = reports.clone();
        shuffled.shuffle(&mut rng);
        assert_eq!(aggregate_stats(&shuffled), whole);

        let mut parts: Vec<StatsAccumulator> = (0..rng.gen_range(1..6)).map(|_| StatsAccumulator::default()).collect();
        for r in &reports {
            let k = rng.gen_range(0..parts.len());
            parts[k].add(r);
        }
        let left = parts.iter().cloned().fold(StatsAccumulator::default(), StatsAccumulator::merge);
        let right = parts.iter().rev().cloned().fold(StatsAccumulator::default(), |acc, p| p.merge(acc));
        assert_eq!(left.finish(), whole);
        assert_eq!(right.finish(), whole);
    }
}

#[test]
fn stats_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..20 {
        let n = rng.gen_range(1..30);
        let reports = synthetic_reports(&mut rng, n);
        let stats = aggregate_stats(&reports);
        let smells: Vec<Kind> = Kind::all().filter(|k| k.is_smell()).collect();
        let grand: usize = reports.iter().map(|r| smells.iter().map(|k| r.counts[k]).sum::<usize>()).sum();
        assert_eq!(stats.total.iter().filter(|(k, _)| k.is_smell()).map(|(_, v)| *v as usize).sum::<usize>(), grand);
        for k in Kind::all() {
            let total: usize = reports.iter().map(|r| r.counts[&k]).sum();
            let present = reports.iter().filter(|r| r.counts[&k] > 0).count();
            assert_eq!(stats.total[&k] as usize, total);
            assert!((stats.avg_per_game[&k] - total as f64 / n as f64).abs() < 1e-9);
            assert!((stats.pct_games_containing[&k] - 100.0 * present as f64 / n as f64).abs() < 1e-9);
            if k.is_smell() && grand > 0 {
                assert!((stats.pct_of_all[&k] - 100.0 * total as f64 / grand as f64).abs() < 1e-9);
            }
        }
        if grand > 0 {
            let sum: f64 = stats.pct_of_all.values().sum();
            assert!((99.9..=100.1).contains(&sum));
        }
    }
}
