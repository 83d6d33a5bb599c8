//! Planar polytope toolkit: hull, support function, supporting cones,
//! halfspace clipping and the faces exposed by a direction.
//!
//! ```bash
//! cargo run --example polytope
//! ```

use setmember::geometry::{convex_hull, faces_f, intersect_halfspaces, supporting_cone};
use setmember::Halfspace;

fn main() -> setmember::Result<()> {
    let pts = vec![
        vec![0.0, 0.0],
        vec![2.0, 0.0],
        vec![2.5, 1.5],
        vec![1.0, 2.5],
        vec![-0.5, 1.0],
        vec![1.0, 1.0],
    ];
    let poly = convex_hull(&pts);
    println!("vertices {:?}", poly.vertices());
    for h in poly.halfspaces() {
        println!("  {:?} . x <= {:.4}", h.normal, h.offset);
    }

    let (h, argmax) = poly.support(&[1.0, 1.0])?;
    println!("h(1, 1) = {h}, attained at {argmax:?}");

    for v in poly.vertices() {
        let cone = supporting_cone(&poly, v)?;
        println!("cone at {v:?}: generators {:?}, angles {:?}", cone.generators, cone.angular_interval());
    }

    let cut = intersect_halfspaces(&poly, &[Halfspace::new(vec![0.0, 1.0], 1.2)]);
    println!("clipped by y <= 1.2: {:?}", cut.vertices());

    let faces = faces_f(&poly, &[1.0, 0.0])?;
    println!("face maximizing x: {:?}", faces.plus.vertices);
    println!("face minimizing x: {:?}", faces.minus.vertices);
    Ok(())
}
