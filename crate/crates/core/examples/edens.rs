//! Edens, abysses and the collapse of an eden in a non-singular set.

use std::sync::Arc;

use nssets::colimit::{complement_full, is_abyss, is_eden, is_full, standard_pair, Subcomplex};
use nssets::desing::verify_collapse_structure;
use nssets::sset::simplex;
use nssets::{SimplexId, StandardKind};

fn main() -> nssets::Result<()> {
    let d2 = Arc::new(simplex(2));
    // the edge 01 of Δ[2]: every simplex ending in it lies in it
    let edge = Subcomplex::generated(&d2, [SimplexId::new(1, 0)])?;
    let v = complement_full(&edge);
    println!("01 in Δ[2]: full {} eden {} abyss {}", is_full(&edge), is_eden(&edge), is_abyss(&edge));
    println!("its complement has {} simplices and is an abyss: {}", v.len(), is_abyss(&v));

    let (_, bd) = standard_pair(StandardKind::Boundary, 2, None)?;
    println!("∂Δ[2] in Δ[2]: eden {}", is_eden(&bd));

    let rep = verify_collapse_structure(&edge)?;
    println!("Δ[2]/01 desingularizes to {:?}; structure checks pass: {}", rep.dxa_counts, rep.passed());
    Ok(())
}
