use serde::{Deserialize, Serialize};

use super::{cap, for_each_permutation, AugmentedAdjacency, OracleError, ORDERING_SEARCH_MAX_N};
use crate::models::Ordering;
use crate::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderingProperty {
    CircularlyCompatible,
    QuasiCircular,
}

impl OrderingProperty {
    pub fn holds(self, m: &AugmentedAdjacency) -> bool {
        match self {
            OrderingProperty::CircularlyCompatible => m.has_circularly_compatible_ones(),
            OrderingProperty::QuasiCircular => m.has_quasi_circular_ones(),
        }
    }
}

/// Exhaustive search over orderings with node 0 first (both properties are invariant
/// under rotation). With `parallel` the second position is split across threads.
pub fn search_ordering(g: &Graph, property: OrderingProperty, parallel: bool) -> Result<Option<Ordering>, OracleError> {
    let n = g.n();
    cap(n, ORDERING_SEARCH_MAX_N)?;
    if n <= 2 {
        let order: Vec<usize> = (0..n).collect();
        let ok = property.holds(&AugmentedAdjacency::new(g, &order));
        return Ok(ok.then_some(Ordering { order }));
    }
    let from_second = |second: usize| {
        let mut items: Vec<usize> = vec![0, second];
        items.extend((1..n).filter(|&v| v != second));
        let mut found = None;
        for_each_permutation(&mut items, 2, &mut |p| {
            if property.holds(&AugmentedAdjacency::new(g, p)) {
                found = Some(p.to_vec());
                true
            } else {
                false
            }
        });
        found
    };
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        let found = (1..n).into_par_iter().find_map_first(from_second);
        return Ok(found.map(|order| Ordering { order }));
    }
    let _ = parallel;
    Ok((1..n).find_map(from_second).map(|order| Ordering { order }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claw_orderings() {
        let claw = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(search_ordering(&claw, OrderingProperty::QuasiCircular, false).unwrap().is_some());
        assert!(search_ordering(&claw, OrderingProperty::CircularlyCompatible, true).unwrap().is_none());
    }

    #[test]
    fn too_large() {
        let e: Vec<_> = (1..11).map(|i| (i - 1, i)).collect();
        let p = Graph::new(11, &e).unwrap();
        assert!(search_ordering(&p, OrderingProperty::QuasiCircular, false).is_err());
    }
}
