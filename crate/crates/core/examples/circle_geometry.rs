//! Circle intersection in its four regimes, and the collinearity test used
//! to reject degenerate seed triangles.
//!
//! cargo run --example circle_geometry

use udgloc::geometry::{are_collinear, circle_intersection, Intersection, Point, COLLINEARITY_TOLERANCE};

fn main() {
    let cases = [
        ("transversal", Point::new(0.0, 0.0), 1.0, Point::new(1.2, 0.0), 0.8),
        ("tangent", Point::new(0.0, 0.0), 1.0, Point::new(2.0, 0.0), 1.0),
        ("disjoint", Point::new(0.0, 0.0), 0.4, Point::new(2.0, 0.0), 0.4),
        ("coincident", Point::new(1.0, 1.0), 0.5, Point::new(1.0, 1.0), 0.5),
    ];
    for (label, c1, r1, c2, r2) in cases {
        match circle_intersection(c1, r1, c2, r2) {
            Intersection::Points(pair) if pair.coincident => {
                println!("{label:<11} touch at ({:.4}, {:.4})", pair.p1.x, pair.p1.y)
            }
            Intersection::Points(pair) => println!(
                "{label:<11} ({:.4}, {:.4}) and ({:.4}, {:.4})",
                pair.p1.x, pair.p1.y, pair.p2.x, pair.p2.y
            ),
            Intersection::None => println!("{label:<11} no common point"),
            Intersection::Infinite => println!("{label:<11} same circle"),
        }
    }

    let a = Point::new(0.0, 0.0);
    let b = Point::new(4.0, 0.0);
    for y in [0.0, 1e-7, 1e-3] {
        let c = Point::new(2.0, y);
        println!(
            "c.y = {y:e}: collinear = {}",
            are_collinear(a, b, c, COLLINEARITY_TOLERANCE)
        );
    }
}
