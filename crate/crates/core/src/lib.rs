pub mod config;
pub mod corpus;
pub mod finding;
pub mod frontend;
pub mod game;
pub mod patterns;
pub mod smells;

pub use config::AnalysisConfig;
pub use finding::{Finding, Kind, Location, PatternKind, SmellKind};
