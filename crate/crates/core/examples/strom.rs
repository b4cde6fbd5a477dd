//! Strøm structures: the Barratt construction, Sd², and cobase change.

use std::sync::Arc;

use nssets::colimit::{standard_pair, Subcomplex};
use nssets::sset::simplex;
use nssets::strom::{cobase_change_strom, lemma61_check, strom_from_barratt_eden, strom_sd2, verify_strom};
use nssets::{SimpMap, SimplexId, StandardKind};

fn main() -> nssets::Result<()> {
    let d1 = Arc::new(simplex(1));
    let end = Subcomplex::generated(&d1, [SimplexId::new(0, 0)])?;
    let s = strom_from_barratt_eden(&d1, &end)?;
    println!("B({{0}} -> Δ[1]): W = {:?}, checks {:?}", s.w_set.counts(), verify_strom(&s)?.as_array());

    let (d2, bd) = standard_pair(StandardKind::Boundary, 2, None)?;
    let s = strom_sd2(&d2, &bd)?;
    println!(
        "Sd²(∂Δ[2] -> Δ[2]): A = {:?}, B = {:?}, W = {:?}",
        s.source().counts(),
        s.target().counts(),
        s.w_set.counts()
    );
    println!("  checks {:?}", verify_strom(&s)?.as_array());

    // collapse the boundary: the pushout, desingularized
    let point = Arc::new(simplex(0));
    let f = SimpMap::to_point(s.source(), &point)?;
    let t = cobase_change_strom(&s, &f)?;
    println!("cobase change along A -> Δ[0]: B̂ = {:?}, checks {:?}", t.target().counts(), verify_strom(&t)?.as_array());
    println!("B ⊔_W D(W ⊔_A C) ≅ D(B ⊔_A C): {}", lemma61_check(&s, &f)?);
    Ok(())
}
