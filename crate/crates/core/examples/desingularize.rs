//! Desingularization of collapsed simplices, with the step log.

use nssets::accept::standard_collapse;
use nssets::desing::desingularize;
use nssets::homology::homology;
use nssets::subdivision::sd_iter;
use nssets::StandardKind;

fn main() -> nssets::Result<()> {
    for n in 1..=3 {
        let x = standard_collapse(StandardKind::Boundary, n, None)?;
        let d = desingularize(&x)?;
        println!("D(Δ[{n}]/∂Δ[{n}]) = {:?} after {} collapses", d.dx.counts(), d.steps.len());
        let d1 = desingularize(&sd_iter(&x, 1)?)?;
        println!("D Sd(Δ[{n}]/∂Δ[{n}]) = {:?}", d1.dx.counts());
    }

    // the 2-sphere with collapsed boundary, subdivided twice: D of it is the
    // suspension of a 12-gon
    let x = sd_iter(&standard_collapse(StandardKind::Boundary, 2, None)?, 2)?;
    let d = desingularize(&x)?;
    println!("\nSd²(Δ[2]/∂Δ[2]) = {:?}", x.counts());
    for s in d.steps.iter().take(3) {
        println!("  collapse simplex {}/{} at vertices {}..{} -> {:?}", s.dim, s.index, s.i, s.j, s.counts_after);
    }
    println!("  ... {} collapses in all", d.steps.len());
    println!("D = {:?}, χ = {}", d.dx.f_vector(), d.dx.euler_characteristic());
    print!("{}", homology(&d.dx));
    Ok(())
}
