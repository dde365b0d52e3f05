//! Posterior mixed memberships for the karate club.
//!
//! ```text
//! cargo run --release --example cluster_zachary -- [seed]
//! ```

use netmix::experiment;
use netmix::SamplerConfig;

fn main() -> netmix::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .map_or(7, |s| s.parse().expect("seed is an integer"));
    let cfg = SamplerConfig::new(2).with_seed(seed);
    let report = experiment::zachary(&cfg)?;
    print!("{}", report.render());

    // Nodes whose membership is split most evenly sit between the factions.
    let mut boundary: Vec<_> = report
        .memberships
        .iter()
        .map(|row| (row.node.clone(), (row.z[0] - 0.5).abs()))
        .collect();
    boundary.sort_by(|a, b| a.1.total_cmp(&b.1));
    let closest: Vec<&str> = boundary.iter().take(4).map(|(n, _)| n.as_str()).collect();
    println!("most mixed members: {}", closest.join(", "));
    Ok(())
}
