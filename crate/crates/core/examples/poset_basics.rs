//! Build posets, read one from JSON and look at its shape.
//!
//! cargo run --example poset_basics

use posalg::miners::{longest_descending_chain, max_antichain};
use posalg::poset::{antichain, chain, product, Poset, DEFAULT_ENUM_CAP};

fn main() -> posalg::error::Result<()> {
    let v = Poset::from_json(include_str!("../../../data/v3.json"))?;
    println!("{}: {} elements, covers {:?}", v.name(), v.len(), v.covers());
    println!("directed: {}  top: {:?}", v.is_directed(), v.top().map(|t| v.element_name(t)));

    let segments = v.final_segments(DEFAULT_ENUM_CAP)?;
    let shown: Vec<String> = segments.iter().map(|r| v.format_set(r.set())).collect();
    println!("final segments: {}", shown.join(" "));

    let grid = product(&chain(3), &antichain(2))?;
    let width = max_antichain(grid.len(), |a, b| grid.leq(a, b));
    let height = longest_descending_chain(grid.len(), |a, b| grid.leq(a, b));
    println!("{}: width {} (exact: {}), height {}", grid.name(), width.len(), width.exact, height.len());

    let aug = v.linear_augmentation(7);
    println!("a linear extension of V3: {:?}", aug.order.iter().map(|&i| v.element_name(i)).collect::<Vec<_>>());
    print!("{}", v.to_dot());
    Ok(())
}
