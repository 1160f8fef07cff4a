//! Generating the free algebra of a directed poset along a cofinal chain.

use std::sync::Arc;

use posalg::corpus::with_top;
use posalg::morphisms::h_construction;
use posalg::poset::{antichain, DEFAULT_ENUM_CAP};

fn main() -> posalg::error::Result<()> {
    let p = Arc::new(with_top(&antichain(3)));
    println!("{} with covers {:?}", p.name(), p.covers());
    for c in p.maximal_chains() {
        let (h, r) = h_construction(p.clone(), &c, DEFAULT_ENUM_CAP)?;
        let names: Vec<&str> = c.iter().map(|&i| p.element_name(i)).collect();
        println!(
            "chain {names:?}: |H| = {}, {} of {} point classes, generates {}, layered {}",
            h.len(),
            r.generated_atoms,
            r.points,
            r.generates,
            r.layering
        );
    }
    Ok(())
}
