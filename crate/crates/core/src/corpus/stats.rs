use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::GameReport;
use crate::finding::{Kind, SmellKind};

/// Additive partial statistics. Percentages are derived only in `finish`,
/// so merging partials in any grouping gives the same result.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StatsAccumulator {
    pub n_games: u64,
    pub total: BTreeMap<Kind, u64>,
    pub games_containing: BTreeMap<Kind, u64>,
}

impl StatsAccumulator {
    pub fn add(&mut self, report: &GameReport) {
        self.n_games += 1;
        for kind in Kind::all() {
            let count = report.count(kind) as u64;
            *self.total.entry(kind).or_default() += count;
            *self.games_containing.entry(kind).or_default() += u64::from(count > 0);
        }
    }

    pub fn merge(mut self, other: StatsAccumulator) -> StatsAccumulator {
        self.n_games += other.n_games;
        for (k, v) in other.total {
            *self.total.entry(k).or_default() += v;
        }
        for (k, v) in other.games_containing {
            *self.games_containing.entry(k).or_default() += v;
        }
        self
    }

    pub fn finish(&self) -> CorpusStats {
        let n = self.n_games;
        let get = |map: &BTreeMap<Kind, u64>, k: Kind| map.get(&k).copied().unwrap_or(0);
        let total: BTreeMap<Kind, u64> = Kind::all().map(|k| (k, get(&self.total, k))).collect();
        let games_containing: BTreeMap<Kind, u64> = Kind::all().map(|k| (k, get(&self.games_containing, k))).collect();
        let smell_total: u64 = SmellKind::ALL.iter().map(|&s| total[&Kind::Smell(s)]).sum();
        let ratio = |num: f64, den: u64| if den == 0 { 0.0 } else { num / den as f64 };
        CorpusStats {
            n_games: n,
            avg_per_game: total.iter().map(|(&k, &v)| (k, ratio(v as f64, n))).collect(),
            pct_of_all: SmellKind::ALL
                .iter()
                .map(|&s| (Kind::Smell(s), ratio(100.0 * total[&Kind::Smell(s)] as f64, smell_total)))
                .collect(),
            pct_games_containing: games_containing.iter().map(|(&k, &v)| (k, ratio(100.0 * v as f64, n))).collect(),
            total,
            games_containing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub n_games: u64,
    pub total: BTreeMap<Kind, u64>,
    pub games_containing: BTreeMap<Kind, u64>,
    pub avg_per_game: BTreeMap<Kind, f64>,
    /// Share of all smells (S1..S13 only).
    pub pct_of_all: BTreeMap<Kind, f64>,
    pub pct_games_containing: BTreeMap<Kind, f64>,
}

pub fn aggregate_stats(reports: &[GameReport]) -> CorpusStats {
    let mut acc = StatsAccumulator::default();
    for report in reports {
        acc.add(report);
    }
    acc.finish()
}

/// `num / den` to two decimals, rounding half to even, computed exactly.
/// A zero denominator renders as `0.00`.
pub fn format_ratio(num: u128, den: u128) -> String {
    if den == 0 {
        return "0.00".to_string();
    }
    let scaled = num * 100;
    let (mut q, r) = (scaled / den, scaled % den);
    if 2 * r > den || (2 * r == den && q % 2 == 1) {
        q += 1;
    }
    format!("{}.{:02}", q / 100, q % 100)
}

/// Corpus statistics as a CSV table: one row per statistic, one column per smell.
pub fn render_stats_csv(stats: &CorpusStats) -> String {
    let smells: Vec<Kind> = SmellKind::ALL.iter().map(|&s| Kind::Smell(s)).collect();
    let total = |k: &Kind| stats.total.get(k).copied().unwrap_or(0) as u128;
    let containing = |k: &Kind| stats.games_containing.get(k).copied().unwrap_or(0) as u128;
    let grand: u128 = smells.iter().map(total).sum();
    let n = stats.n_games as u128;

    let mut writer = csv::Writer::from_writer(Vec::new());
    let header = std::iter::once("Statistics".to_string()).chain(smells.iter().map(|k| k.code().to_string()));
    writer.write_record(header).expect("in-memory write");
    type Cell<'a> = Box<dyn Fn(&Kind) -> String + 'a>;
    let rows: [(&str, Cell); 4] = [
        ("Number of smells", Box::new(|k| total(k).to_string())),
        ("Average smell in each game", Box::new(|k| format_ratio(total(k), n))),
        ("% out of all smells", Box::new(|k| format_ratio(100 * total(k), grand))),
        ("% of games containing smell", Box::new(|k| format_ratio(100 * containing(k), n))),
    ];
    for (label, cell) in rows {
        let record = std::iter::once(label.to_string()).chain(smells.iter().map(cell));
        writer.write_record(record).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

/// Per-game kind counts, one row per game.
pub fn render_matrix_csv(reports: &[GameReport]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let header = ["game_id", "file_count", "js_loc"].into_iter().map(str::to_string).chain(Kind::all().map(|k| k.code().to_string()));
    writer.write_record(header).expect("in-memory write");
    for r in reports {
        let record = [r.game_id.clone(), r.file_count.to_string(), r.js_loc.to_string()]
            .into_iter()
            .chain(Kind::all().map(|k| r.count(k).to_string()));
        writer.write_record(record).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_even() {
        assert_eq!(format_ratio(256687, 361), "711.04");
        assert_eq!(format_ratio(471533, 361), "1306.19");
        assert_eq!(format_ratio(1, 8), "0.12");
        assert_eq!(format_ratio(3, 8), "0.38");
        assert_eq!(format_ratio(5, 1000), "0.00");
        assert_eq!(format_ratio(15, 1000), "0.02");
        assert_eq!(format_ratio(7, 0), "0.00");
    }

    #[test]
    fn zero_games() {
        let stats = aggregate_stats(&[]);
        assert_eq!(stats.n_games, 0);
        assert!(stats.pct_of_all.values().all(|&v| v == 0.0));
        let csv = render_stats_csv(&stats);
        assert!(csv.starts_with("Statistics,S1,S2,S3,S4,S5,S6,S7,S8,S9,S10,S11,S12,S13\n"));
        assert_eq!(csv.lines().count(), 5);
    }
}
