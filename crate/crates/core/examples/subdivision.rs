//! Kan subdivision versus the Barratt nerve.
//!
//! `b_X : Sd X -> B X` is an isomorphism exactly when `X` is non-singular.

use std::sync::Arc;

use nssets::accept::standard_collapse;
use nssets::sset::{boundary, simplex};
use nssets::subdivision::{b_map, barratt, last_vertex, sd, sd_iter};
use nssets::{FinSimpSet, StandardKind};

fn show(name: &str, x: &Arc<FinSimpSet>) -> nssets::Result<()> {
    let b = b_map(x)?;
    println!(
        "{name:<14} counts {:?}  Sd {:?}  B {:?}  non-singular {}  b iso {}",
        x.counts(),
        sd(x)?.counts(),
        barratt(x).counts(),
        x.is_nonsingular(),
        b.is_isomorphism()
    );
    Ok(())
}

fn main() -> nssets::Result<()> {
    show("Δ[2]", &Arc::new(simplex(2)))?;
    show("∂Δ[3]", &Arc::new(boundary(3)))?;
    show("Δ[2]/∂Δ[2]", &standard_collapse(StandardKind::Boundary, 2, None)?)?;
    show("Δ[1]/∂Δ[1]", &standard_collapse(StandardKind::Boundary, 1, None)?)?;

    // Sd² of a triangle: 25 vertices, 60 edges, 36 triangles
    let d2 = Arc::new(simplex(2));
    println!("Sd²Δ[2] f-vector {:?}", sd_iter(&d2, 2)?.f_vector());

    // the last vertex map Sd X -> X
    let lv = last_vertex(&d2)?;
    println!("last vertex map Sd Δ[2] -> Δ[2]: surjective {}", lv.is_degreewise_surjective());
    Ok(())
}
