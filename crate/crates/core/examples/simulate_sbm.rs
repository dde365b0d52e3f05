//! Generates planted-partition graphs and checks their block densities.
//!
//! ```text
//! cargo run --example simulate_sbm -- [preset] [seed]
//! ```

use netmix::simulate::generate_sbm;
use netmix::{Preset, SbmSpec};

fn main() -> netmix::Result<()> {
    let mut args = std::env::args().skip(1);
    let preset: Preset = args.next().as_deref().unwrap_or("sbm4").parse()?;
    let seed = args
        .next()
        .map_or(1, |s| s.parse().expect("seed is an integer"));

    let spec = preset.spec();
    let planted = generate_sbm(&spec, seed)?;
    let g = &planted.graph;
    println!(
        "{preset}: n = {}, m = {}, blocks {:?}",
        g.n(),
        g.m(),
        spec.block_sizes()
    );

    let k = spec.blocks();
    let mut links = vec![vec![0usize; k]; k];
    for (i, j) in g.edges() {
        let (a, b) = (planted.truth[i], planted.truth[j]);
        links[a.min(b)][a.max(b)] += 1;
    }
    let sizes = spec.block_sizes();
    for a in 0..k {
        for b in a..k {
            let pairs = if a == b {
                sizes[a] * (sizes[a] - 1) / 2
            } else {
                sizes[a] * sizes[b]
            };
            println!(
                "  blocks ({a},{b}): density {:.4}, target {:.2}",
                links[a][b] as f64 / pairs as f64,
                spec.density()[a][b]
            );
        }
    }

    let custom = SbmSpec::planted(vec![10, 10], 1.0, 0.0)?;
    let cliques = generate_sbm(&custom, seed)?;
    println!("two 10-cliques: m = {}", cliques.graph.m());
    Ok(())
}
