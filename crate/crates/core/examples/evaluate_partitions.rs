//! Comparing hard partitions: NMI, ARI, permutation agreement, modularity.

use netmix::graph::{builtin_zachary, zachary_factions};
use netmix::metrics::{agreement_up_to_permutation, ari, modularity_score, nmi, ContingencyTable};

fn show(name: &str, pred: &[usize], truth: &[usize]) -> netmix::Result<()> {
    println!(
        "{name:<22} NMI {:.4}  ARI {:+.4}  agreement {}/{}",
        nmi(pred, truth)?,
        ari(pred, truth)?,
        agreement_up_to_permutation(pred, truth)?,
        pred.len()
    );
    Ok(())
}

fn main() -> netmix::Result<()> {
    show("identical", &[0, 0, 1, 1], &[0, 0, 1, 1])?;
    show("labels swapped", &[1, 1, 0, 0], &[0, 0, 1, 1])?;
    show("independent", &[0, 0, 1, 1], &[0, 1, 0, 1])?;
    show("one node moved", &[0, 0, 0, 1, 1, 0], &[0, 0, 0, 1, 1, 1])?;

    let g = builtin_zachary();
    let factions = zachary_factions();
    let by_parity: Vec<usize> = (0..g.n()).map(|i| i % 2).collect();
    show("karate vs parity", &by_parity, &factions)?;
    println!(
        "modularity of the faction split: {:.4}",
        modularity_score(&g, &factions)?
    );
    println!(
        "modularity of the parity split:  {:.4}",
        modularity_score(&g, &by_parity)?
    );

    let table = ContingencyTable::new(&by_parity, &factions)?;
    println!("contingency (parity x faction): {:?}", table.counts);
    Ok(())
}
