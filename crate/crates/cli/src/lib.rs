//! Fixture format, claim runner and command-line front end for `lnd-core`.

pub mod cli;
pub mod corpus;
pub mod fixture;
pub mod report;
pub mod run;

pub use fixture::{Claim, Fixture, FixtureError, FixtureFile};
pub use report::{ClaimReport, Status, VerificationReport};
pub use run::{run_fixture, RunOptions};
