//! Verifies the whole catalog and shows, next to each status, whether the
//! reported error bound actually covers the distance to the closed form.
//!
//! ```bash
//! cargo run --release -p binharm-core --example bound_audit -- 12 32
//! ```

use std::time::Instant;

use binharm_core::accel::SumOptions;
use binharm_core::catalog::{inventory, verify_identity};
use binharm_core::PrecisionContext;

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u32>().expect("integer argument"));
    let digits = args.next().unwrap_or(12);
    let precision = args.next().unwrap_or(32);
    let ctx = PrecisionContext::new(precision).expect("precision of at least 32");
    let started = Instant::now();
    println!("{:<14} {:<14} {:>6} {:>7} {:>10}  sound", "id", "status", "digits", "terms", "bound");
    for identity in inventory() {
        let v = verify_identity(identity, digits, &ctx, &SumOptions::default());
        let bound = v.sum.as_ref().map(|s| s.error_bound.to_sci_string(3)).unwrap_or_default();
        let sound = match (&v.sum, &v.rhs) {
            (Some(s), Some(r)) if (&s.value - r).abs() <= s.error_bound => "yes",
            (Some(_), Some(_)) => "no",
            _ => "-",
        };
        let r = &v.report;
        println!(
            "{:<14} {:<14} {:>6} {:>7} {:>10}  {sound}",
            r.id,
            r.status.to_string(),
            r.digits_verified,
            r.terms_used,
            bound
        );
        if let Some(d) = &r.diagnostic {
            println!("    {d}");
        }
    }
    println!("{:.2} s", started.elapsed().as_secs_f64());
}
