//! Modularity maximization on the karate club and on planted partitions.

use netmix::baseline::{greedy_modularity, louvain_modularity, modularity_baseline};
use netmix::graph::{builtin_zachary, zachary_factions};
use netmix::metrics::{ari, nmi};
use netmix::simulate::generate_sbm;
use netmix::{Graph, Preset};

fn report(name: &str, g: &Graph, truth: &[usize]) -> netmix::Result<()> {
    println!("{name}");
    for (method, part) in [
        ("agglomerative", greedy_modularity(g)?),
        ("louvain", louvain_modularity(g)?),
        ("best of both", modularity_baseline(g)?),
    ] {
        println!(
            "  {method:<14} Q {:.4}  communities {}  ARI {:.4}  NMI {:.4}",
            part.modularity,
            part.communities,
            ari(&part.labels, truth)?,
            nmi(&part.labels, truth)?
        );
    }
    Ok(())
}

fn main() -> netmix::Result<()> {
    report("karate club", &builtin_zachary(), &zachary_factions())?;
    for preset in Preset::ALL {
        let planted = generate_sbm(&preset.spec(), 0)?;
        report(preset.name(), &planted.graph, &planted.truth)?;
    }
    Ok(())
}
