use super::{
    propose_bilateration, propose_trilateration, AlgorithmConfig, Formation, LocalizationState, SeedPlacement,
};
use crate::geometry::{are_collinear, circle_intersection, Point, COLLINEARITY_TOLERANCE};
use crate::network::{NodeId, WsnGraph};

/// Mutually adjacent triples `a < b < c` in lexicographic order.
pub fn seed_triples(graph: &WsnGraph) -> impl Iterator<Item = [NodeId; 3]> + '_ {
    (0..graph.len()).flat_map(move |a| {
        let na = graph.neighbors(a);
        na.iter().copied().filter(move |&b| b > a).flat_map(move |b| {
            na.iter()
                .copied()
                .filter(move |&c| c > b && graph.is_neighbor(b, c))
                .map(move |c| [a, b, c])
        })
    })
}

/// Seed coordinates for a triple, or `None` when the triple is degenerate.
fn seed_positions(graph: &WsnGraph, [a, b, c]: [NodeId; 3], placement: SeedPlacement) -> Option<[Point; 3]> {
    let points = match placement {
        SeedPlacement::Anchored => [graph.position(a), graph.position(b), graph.position(c)],
        SeedPlacement::Relative => {
            let ab = graph.delta(a, b)?;
            let pa = Point::ORIGIN;
            let pb = Point::new(ab, 0.0);
            // p1 is left of a -> b, i.e. the upper half-plane
            let pc = circle_intersection(pa, graph.delta(a, c)?, pb, graph.delta(b, c)?)
                .pair()?
                .p1;
            [pa, pb, pc]
        }
    };
    (!are_collinear(points[0], points[1], points[2], COLLINEARITY_TOLERANCE)).then_some(points)
}

/// One breadth-first propagation run from a fixed seed triple.
///
/// Returns `None` if the triple is not usable as a seed (not mutually
/// adjacent, or collinear).
pub fn localize_from_seeds(graph: &WsnGraph, seeds: [NodeId; 3], config: &AlgorithmConfig) -> Option<Formation> {
    let [a, b, c] = seeds;
    if !(graph.is_neighbor(a, b) && graph.is_neighbor(a, c) && graph.is_neighbor(b, c)) {
        return None;
    }
    let positions = seed_positions(graph, seeds, config.seed_placement)?;
    Some(propagate(graph, seeds, positions, config))
}

fn propagate(graph: &WsnGraph, seeds: [NodeId; 3], positions: [Point; 3], config: &AlgorithmConfig) -> Formation {
    let mut state = LocalizationState::new(graph, config.mode);
    for (id, pos) in seeds.into_iter().zip(positions) {
        state.place_seed(id, pos);
    }
    let violations = config.violations_enabled();
    while let Some(i) = state.dequeue() {
        for &j in graph.neighbors(i) {
            if state.is_localized(j) {
                continue;
            }
            let ln = state.ln_count(j);
            let placed = if ln >= 3 {
                match propose_trilateration(&state, j, config) {
                    Ok(record) => Some(record),
                    Err(reason) if violations => propose_bilateration(&state, j, config).ok().map(|mut record| {
                        record.fallback_from = Some(reason);
                        record
                    }),
                    Err(_) => None,
                }
            } else if ln == 2 && violations {
                propose_bilateration(&state, j, config).ok()
            } else {
                None
            };
            if let Some(record) = placed {
                state.commit(record);
            }
        }
    }
    state.into_formation()
}

/// Localizes `graph` by sweeping seed triples.
///
/// Returns the first formation that covers every node, otherwise the
/// largest one found (earliest triple wins ties). The result is empty when
/// no usable seed triple exists.
pub fn localize_graph(graph: &WsnGraph, config: &AlgorithmConfig) -> Formation {
    let mut best = Formation::empty(config.mode);
    let n = graph.len();
    let triples = seed_triples(graph)
        .filter_map(|t| seed_positions(graph, t, config.seed_placement).map(|p| (t, p)))
        .take(config.seed_triple_cap.unwrap_or(usize::MAX));
    for (seeds, positions) in triples {
        let current = propagate(graph, seeds, positions, config);
        if current.len() == n {
            return current;
        }
        if current.len() > best.len() {
            best = current;
        }
    }
    best
}
