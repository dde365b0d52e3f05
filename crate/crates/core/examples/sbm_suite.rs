//! A reduced simulation study: sampler versus modularity baseline.
//!
//! ```text
//! cargo run --release --example sbm_suite -- [reps]
//! ```

use netmix::experiment::{sbm_suite, SuiteOptions};
use netmix::Preset;

fn main() -> netmix::Result<()> {
    let reps = std::env::args()
        .nth(1)
        .map_or(3, |s| s.parse().expect("reps is an integer"));
    let opts = SuiteOptions {
        presets: vec![Preset::Sbm1, Preset::Sbm2, Preset::Sbm4, Preset::Sbm5],
        reps,
        ..SuiteOptions::default()
    };
    let report = sbm_suite(&opts)?;
    print!("{}", report.render_table());
    Ok(())
}
