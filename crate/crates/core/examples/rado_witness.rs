//! Large antichains of product terms over finite prefixes of the Rado
//! poset, and a labelled front with no good pair.

use posalg::lattice::{enumerate_pi, pi_leq, LatticeMode};
use posalg::miners::max_antichain;
use posalg::poset::{rado_prefix, DEFAULT_ENUM_CAP};
use posalg::wqo::{classify_array, ArrayLabeling};

fn main() -> posalg::error::Result<()> {
    for n in 3..=6 {
        let r = rado_prefix(n)?;
        let pi = enumerate_pi(&r, LatticeMode::Inclusive, DEFAULT_ENUM_CAP)?;
        let w = max_antichain(pi.len(), |a, b| pi_leq(&r, pi[a], pi[b]));
        let sample: Vec<String> = w.members.iter().take(4).map(|&i| pi[i].format(&r)).collect();
        println!(
            "N={n}: {} elements, |Pi| = {}, antichain of {} (exact: {}), e.g. {}",
            r.len(),
            pi.len(),
            w.len(),
            w.exact,
            sample.join(", ")
        );
    }

    let horizon = 10;
    let (target, arr) = ArrayLabeling::rado_identity(horizon)?;
    let v = classify_array(&target, &arr)?;
    println!(
        "identity labelling on front(2,{horizon}): {:?}, {} of {} shift pairs good",
        v.verdict, v.good_pairs, v.shift_pairs
    );
    Ok(())
}
