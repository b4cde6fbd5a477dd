//! Integral homology, Smith normal form, and a homology isomorphism check.

use nssets::accept::standard_collapse;
use nssets::desing::desingularize;
use nssets::homology::{homology, homology_of_map};
use nssets::snf::{smith_normal_form, Matrix};
use nssets::subdivision::sd_iter;
use nssets::StandardKind;

fn main() -> nssets::Result<()> {
    let m = Matrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&m);
    println!("invariant factors of the sample matrix: {:?}", snf.factors());

    let x = standard_collapse(StandardKind::Boundary, 2, None)?;
    print!("Δ[2]/∂Δ[2]:\n{}", homology(&x));

    let horn = standard_collapse(StandardKind::Horn, 2, Some(0))?;
    print!("Δ[2]/Λ^0[2]:\n{}", homology(&horn));

    // the unit Sd² X -> D Sd² X on the collapsed edge
    let e = sd_iter(&standard_collapse(StandardKind::Boundary, 1, None)?, 2)?;
    let d = desingularize(&e)?;
    let h = homology_of_map(&d.eta);
    for m in &h.degrees {
        println!("H_{}(η): {}x{} matrix, iso {}", m.degree, m.matrix.rows(), m.matrix.cols(), m.is_isomorphism);
    }
    Ok(())
}
