//! Harness around the coincidence-class calculus: instance files, seeded
//! instance generation, reports, and the verification checks behind the
//! `coincide` binary.

pub mod generate;
pub mod instance;
pub mod report;
pub mod verify;

pub use generate::{random_instance, GenerateError};
pub use instance::{Instance, ParseError};
pub use report::Report;
pub use verify::{verify_instance, Verdict, VerifyOptions};
