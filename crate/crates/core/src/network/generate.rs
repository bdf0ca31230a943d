use std::collections::BTreeSet;
use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{NodeId, WsnGraph};
use crate::error::{Error, Result};
use crate::geometry::{distance, Point};

const DEPLOYMENT_ATTEMPTS: usize = 16;
const DEGREE_TOLERANCE: f64 = 0.1;

/// Deploys `n` nodes uniformly on `[0, area_side]^2` and picks the sensing
/// range so the average degree lands within 0.1 of `target_avg_degree`.
///
/// The range is placed halfway between the k-th and (k+1)-th smallest
/// pairwise distances, `k = round(target * n / 2)`, so that no pair sits on
/// the disk boundary. Measured distances are exact.
pub fn generate_random_udg(n: usize, area_side: f64, target_avg_degree: f64, seed: u64) -> Result<WsnGraph> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("need at least 4 nodes, got {n}")));
    }
    if !(area_side > 0.0 && area_side.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "area side must be positive, got {area_side}"
        )));
    }
    if !(target_avg_degree > 0.0 && target_avg_degree < (n - 1) as f64) {
        return Err(Error::InvalidParameter(format!(
            "target degree {target_avg_degree} must lie in (0, {})",
            n - 1
        )));
    }
    let pairs = n * (n - 1) / 2;
    let k = (target_avg_degree * n as f64 / 2.0).round() as usize;
    let achieved = 2.0 * k as f64 / n as f64;
    if k == 0 || k >= pairs || (achieved - target_avg_degree).abs() > DEGREE_TOLERANCE {
        return Err(Error::DegreeUnreachable {
            target: target_avg_degree,
            attempts: 0,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..DEPLOYMENT_ATTEMPTS {
        let positions: Vec<Point> = (0..n)
            .map(|_| Point::new(rng.random_range(0.0..area_side), rng.random_range(0.0..area_side)))
            .collect();
        let mut dists = Vec::with_capacity(pairs);
        for u in 0..n {
            for v in (u + 1)..n {
                dists.push(distance(positions[u], positions[v]));
            }
        }
        dists.select_nth_unstable_by(k, f64::total_cmp);
        let above = dists[k];
        let below = dists[..k].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if below >= above {
            log::debug!("deployment {attempt}: tied distances at rank {k}, redrawing");
            continue;
        }
        let graph = WsnGraph::from_positions(positions, 0.5 * (below + above))?;
        if graph.edge_count() == k {
            return Ok(graph);
        }
    }
    Err(Error::DegreeUnreachable {
        target: target_avg_degree,
        attempts: DEPLOYMENT_ATTEMPTS,
    })
}

fn check_wheel(k_rim: usize, theta: f64, rim_radius: f64) -> Result<()> {
    if k_rim < 4 {
        return Err(Error::WheelConstraint(format!(
            "a wheel needs at least 4 rim nodes, got {k_rim}"
        )));
    }
    if !(theta > 0.0 && rim_radius > 0.0) {
        return Err(Error::WheelConstraint(
            "sensing range and rim radius must be positive".into(),
        ));
    }
    if rim_radius > theta {
        return Err(Error::WheelConstraint(format!(
            "hub-rim distance {rim_radius} exceeds sensing range {theta}"
        )));
    }
    let side = 2.0 * rim_radius * (PI / k_rim as f64).sin();
    if side > theta {
        return Err(Error::WheelConstraint(format!(
            "adjacent rim chord {side:.6} exceeds sensing range {theta}"
        )));
    }
    let skip = 2.0 * rim_radius * (2.0 * PI / k_rim as f64).sin();
    if skip <= theta {
        return Err(Error::WheelConstraint(format!(
            "skip chord {skip:.6} is within sensing range {theta}, rim would have extra chords"
        )));
    }
    Ok(())
}

fn wheel_edges(hub: NodeId, rim: &[NodeId]) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
    let k = rim.len();
    let spokes = rim.iter().map(move |&r| ordered(hub, r));
    let cycle = (0..k).map(move |i| ordered(rim[i], rim[(i + 1) % k]));
    spokes.chain(cycle)
}

fn ordered(a: NodeId, b: NodeId) -> (NodeId, NodeId) {
    (a.min(b), a.max(b))
}

fn edge_set(graph: &WsnGraph) -> BTreeSet<(NodeId, NodeId)> {
    graph.edges().map(|(u, v, _)| (u, v)).collect()
}

/// A hub at `center` (node 0) and `k_rim` rim nodes (1..=k_rim) evenly spaced
/// on a circle of radius `rim_radius`, starting on the +x axis.
///
/// The geometry has to realize the wheel as a unit disk graph: spokes and
/// rim sides within range, every other rim chord out of range.
pub fn generate_wheel(k_rim: usize, theta: f64, rim_radius: f64, center: Point) -> Result<WsnGraph> {
    check_wheel(k_rim, theta, rim_radius)?;
    let mut positions = Vec::with_capacity(k_rim + 1);
    positions.push(center);
    for i in 0..k_rim {
        let angle = 2.0 * PI * i as f64 / k_rim as f64;
        positions.push(center + Point::new(angle.cos(), angle.sin()) * rim_radius);
    }
    let graph = WsnGraph::from_positions(positions, theta)?;
    let rim: Vec<NodeId> = (1..=k_rim).collect();
    let expected: BTreeSet<_> = wheel_edges(0, &rim).collect();
    if edge_set(&graph) != expected {
        return Err(Error::WheelConstraint(
            "geometry sits on the sensing-range boundary; edge set is not a wheel".into(),
        ));
    }
    Ok(graph)
}

/// Several wheels glued along rim sides, with the member lists of each wheel.
#[derive(Debug, Clone)]
pub struct WheelNetwork {
    pub graph: WsnGraph,
    /// `(hub, rim)` per wheel; rim in cyclic order.
    pub wheels: Vec<(NodeId, Vec<NodeId>)>,
}

/// Builds `wheel_count` congruent wheels. Each new wheel is the mirror image
/// of an already placed wheel across one of its rim sides, so the two share
/// exactly those two adjacent rim nodes. Parent wheel and side are drawn from
/// `seed`; a placement is kept only if the composite's unit disk edges are
/// exactly the union of the wheels' edges.
pub fn generate_wheel_network(
    wheel_count: usize,
    k_rim: usize,
    theta: f64,
    rim_radius: f64,
    seed: u64,
) -> Result<WheelNetwork> {
    if wheel_count == 0 {
        return Err(Error::InvalidParameter("wheel count must be at least 1".into()));
    }
    let first = generate_wheel(k_rim, theta, rim_radius, Point::ORIGIN)?;
    let mut positions = first.positions().to_vec();
    let mut wheels = vec![(0, (1..=k_rim).collect::<Vec<_>>())];
    let mut expected: BTreeSet<_> = edge_set(&first);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tries = 0;

    while wheels.len() < wheel_count {
        let mut options: Vec<(usize, usize)> = (0..wheels.len())
            .flat_map(|w| (0..k_rim).map(move |side| (w, side)))
            .collect();
        options.shuffle(&mut rng);
        let placed = options.into_iter().find_map(|(w, side)| {
            tries += 1;
            let (hub, rim) = &wheels[w];
            let a = rim[side];
            let b = rim[(side + 1) % k_rim];
            let new_hub = reflect(positions[*hub], positions[a], positions[b]);
            let mut trial = positions.clone();
            let hub_id = trial.len();
            trial.push(new_hub);
            let mut new_rim = vec![a, b];
            let start = (positions[b] - new_hub).y.atan2((positions[b] - new_hub).x);
            let turn = signed_step(new_hub, positions[a], positions[b], k_rim);
            for i in 1..(k_rim - 1) {
                let angle = start + turn * i as f64;
                new_rim.push(trial.len());
                trial.push(new_hub + Point::new(angle.cos(), angle.sin()) * rim_radius);
            }
            let mut want = expected.clone();
            want.extend(wheel_edges(hub_id, &new_rim));
            let graph = WsnGraph::from_positions(trial.clone(), theta).ok()?;
            (edge_set(&graph) == want).then_some((trial, hub_id, new_rim, want))
        });
        match placed {
            Some((trial, hub, rim, want)) => {
                positions = trial;
                wheels.push((hub, rim));
                expected = want;
            }
            None => return Err(Error::PlacementFailed(tries)),
        }
    }

    let graph = WsnGraph::from_positions(positions, theta)?;
    graph.verify_udg()?;
    Ok(WheelNetwork { graph, wheels })
}

fn reflect(p: Point, a: Point, b: Point) -> Point {
    let dir = b - a;
    let t = (p - a).dot(&dir) / dir.dot(&dir);
    let foot = a + dir * t;
    foot * 2.0 - p
}

/// Angular step that walks the rim from `a` to `b` around `hub`.
fn signed_step(hub: Point, a: Point, b: Point, k_rim: usize) -> f64 {
    let step = 2.0 * PI / k_rim as f64;
    if (a - hub).cross(&(b - hub)) > 0.0 {
        step
    } else {
        -step
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_udg_rejects_tiny_networks() {
        assert!(generate_random_udg(2, 100.0, 1.0, 0).is_err());
        assert!(generate_random_udg(10, 100.0, 9.0, 0).is_err());
    }

    #[test]
    fn random_udg_hits_target_degree() {
        let g = generate_random_udg(100, 100.0, 8.0, 11).unwrap();
        assert!((g.average_degree() - 8.0).abs() <= 0.1);
        g.verify_udg().unwrap();
        for p in g.positions() {
            assert!((0.0..100.0).contains(&p.x) && (0.0..100.0).contains(&p.y));
        }
    }

    #[test]
    fn random_udg_is_deterministic() {
        let a = generate_random_udg(50, 10.0, 6.0, 5).unwrap();
        let b = generate_random_udg(50, 10.0, 6.0, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn wheel_valid_geometry() {
        let g = generate_wheel(6, 1.0, 0.8, Point::ORIGIN).unwrap();
        assert_eq!(g.len(), 7);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.degree(0), 6);
        assert!((1..7).all(|r| g.degree(r) == 3));
    }

    #[test]
    fn wheel_rejections_name_the_constraint() {
        let msg = generate_wheel(6, 1.0, 0.5, Point::ORIGIN).unwrap_err().to_string();
        assert!(msg.contains("skip chord"), "{msg}");
        let msg = generate_wheel(6, 1.0, 1.2, Point::ORIGIN).unwrap_err().to_string();
        assert!(msg.contains("hub-rim"), "{msg}");
        let msg = generate_wheel(12, 1.0, 1.0, Point::ORIGIN).unwrap_err().to_string();
        assert!(msg.contains("skip chord"), "{msg}");
        let msg = generate_wheel(3, 1.0, 0.5, Point::ORIGIN).unwrap_err().to_string();
        assert!(msg.contains("at least 4"), "{msg}");
    }

    #[test]
    fn wheel_network_single_is_plain_wheel() {
        let net = generate_wheel_network(1, 6, 1.0, 0.8, 9).unwrap();
        assert_eq!(net.graph, generate_wheel(6, 1.0, 0.8, Point::ORIGIN).unwrap());
    }

    #[test]
    fn wheel_network_shares_two_rim_nodes() {
        let net = generate_wheel_network(4, 6, 1.0, 0.8, 3).unwrap();
        // first wheel has k+1 nodes, each further one adds a hub and k-2 rim nodes
        assert_eq!(net.graph.len(), 7 + 3 * 5);
        assert_eq!(net.graph.edge_count(), 4 * 12 - 3);
        net.graph.verify_udg().unwrap();
        for (hub, rim) in &net.wheels {
            assert_eq!(net.graph.degree(*hub), 6);
            for r in rim {
                assert!(net.graph.is_neighbor(*hub, *r));
            }
        }
    }
}
