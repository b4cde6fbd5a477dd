//! Nerves, the poset of nondegenerate simplices, and the poset reflection.

use std::sync::Arc;

use nssets::accept::standard_collapse;
use nssets::desing::desingularize;
use nssets::poset::{nerve, pc, poset_iso, sharp, FinPoset};
use nssets::sset::boundary;
use nssets::StandardKind;

fn main() -> nssets::Result<()> {
    let p = FinPoset::from_relation(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])?;
    let n = nerve(&p);
    println!("nerve of the diamond: {:?}", n.counts());
    println!("pc(N P) ≅ P: {}", poset_iso(&pc(&n), &p).is_some());

    let bd = Arc::new(boundary(2));
    println!("∂Δ[2]: sharp has {} elements, pc is a chain of {}", sharp(&bd).size(), pc(&bd).size());

    let x = standard_collapse(StandardKind::Boundary, 2, None)?;
    let d = desingularize(&x)?;
    println!("pc(Δ[2]/∂Δ[2]) has {} element(s), pc(D of it) has {}", pc(&x).size(), pc(&d.dx).size());
    Ok(())
}
