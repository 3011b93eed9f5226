use super::SchemeError;
use crate::models::Ordering;
use crate::oracles::satisfies_umbrella;
use crate::runtime::toolbox::decode_view;
use crate::runtime::{CertCodec, CertReader, CertWriter, Domain, NodeView, Verdict};
use crate::{ensure, Graph};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProperIntervalCert {
    /// 1-based position in the ordering.
    pub pos: u64,
    pub first: u64,
    pub last: u64,
}

impl CertCodec for ProperIntervalCert {
    fn encode(&self, w: &mut CertWriter<'_>) {
        let d = *w.dims();
        w.int("pos", self.pos, Domain::new(1, d.n)).id("first", self.first, d.id()).id("last", self.last, d.id());
    }

    fn decode(r: &mut CertReader<'_>) -> Option<Self> {
        Some(ProperIntervalCert { pos: r.int("pos")?, first: r.int("first")?, last: r.int("last")? })
    }
}

/// Positions from an ordering with the umbrella property.
pub fn prove(g: &Graph, ordering: &Ordering) -> Result<Vec<ProperIntervalCert>, SchemeError> {
    if !ordering.is_permutation_of(g.n()) {
        return Err(SchemeError::witness("ordering is not a permutation of the nodes"));
    }
    if !satisfies_umbrella(g, &ordering.order) {
        return Err(SchemeError::witness("ordering violates the umbrella property"));
    }
    let first = g.id(ordering.order[0]);
    let last = g.id(*ordering.order.last().unwrap());
    let pos = ordering.positions();
    Ok((0..g.n()).map(|v| ProperIntervalCert { pos: pos[v] as u64 + 1, first, last }).collect())
}

pub fn verify(view: &NodeView) -> Verdict {
    let Some((me, nbrs)) = decode_view::<ProperIntervalCert>(view) else {
        return Verdict::reject("malformed certificate");
    };
    ensure!(nbrs.iter().all(|(_, c)| c.first == me.first && c.last == me.last), "neighbours disagree on the end nodes");
    let is_first = view.id == me.first;
    let is_last = view.id == me.last;
    ensure!(is_first == (me.pos == 1), "only the first node sits at position 1");
    if me.first == me.last {
        ensure!(nbrs.is_empty(), "a single end node needs an isolated graph");
    }
    let mut below: Vec<u64> = nbrs.iter().map(|(_, c)| c.pos).filter(|&p| p < me.pos).collect();
    let mut above: Vec<u64> = nbrs.iter().map(|(_, c)| c.pos).filter(|&p| p > me.pos).collect();
    ensure!(below.len() + above.len() == nbrs.len(), "a neighbour shares my position");
    below.sort_unstable();
    above.sort_unstable();
    let (a, b) = (below.len() as u64, above.len() as u64);
    ensure!(below.iter().zip(me.pos - a..).all(|(&x, y)| x == y), "lower neighbours are not contiguous");
    ensure!(above.iter().zip(me.pos + 1..).all(|(&x, y)| x == y), "upper neighbours are not contiguous");
    ensure!((a == 0) == is_first, "only the first node lacks lower neighbours");
    ensure!((b == 0) == is_last, "only the last node lacks upper neighbours");
    Verdict::Accept
}
