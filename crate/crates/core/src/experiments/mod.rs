//! Seeded shape generation, batch gap studies and the full reproduction run.

mod generate;
mod reproduce;
mod study;

pub use generate::{generate, generate_one, ShapeKind, ShapeSpec, AREA_FLOOR, MAX_ATTEMPTS, OBTUSE_MIN_DEG};
pub use reproduce::{reproduce_findings, FindingRow, ReproduceReport, Scale, Status};
pub use study::{batch_gap_study, rect_grid_oracle, Aggregates, Family, Provenance, RectGridOracle, SampleRecord, StudyResult};
