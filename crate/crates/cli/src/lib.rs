//! Verification pipelines over presets and algebra files, and the report
//! they produce.

pub mod pipeline;
pub mod report;

pub use pipeline::{load, run_pipeline, run_source, Input, PipelineOptions, Source, Stage};
pub use report::{Format, Report};
