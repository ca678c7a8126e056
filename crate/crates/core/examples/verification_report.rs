//! Runs the consolidated verification report.
//!
//! ```text
//! cargo run --release --example verification_report          # quick level
//! cargo run --release --example verification_report -- full  # full level
//! ```

use permgrid::report::{verify, Level};

fn main() {
    let level = match std::env::args().nth(1).as_deref() {
        Some("full") => Level::Full,
        _ => Level::Quick,
    };
    let report = verify(level, true);
    print!("{}", report.to_text());
    if !report.overall_pass {
        std::process::exit(2);
    }
}
