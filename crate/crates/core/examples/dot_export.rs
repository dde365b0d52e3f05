//! Draws the karate club colored by posterior hard clustering.
//!
//! ```text
//! cargo run --release --example dot_export > karate.dot
//! dot -Tpng karate.dot -o karate.png
//! ```

use netmix::graph::builtin_zachary;
use netmix::report::to_dot;
use netmix::sampler::run_chain;
use netmix::SamplerConfig;

fn main() -> netmix::Result<()> {
    let g = builtin_zachary();
    let cfg = SamplerConfig::new(2).with_schedule(1000, 2000).with_seed(3);
    let summary = run_chain(&g, &cfg)?;
    print!("{}", to_dot(&g, &summary.hard_labels));
    Ok(())
}
