//! Deterministic certificate corruption and in-domain sampling.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Certificate, Field, IntField, ValueKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Corruption {
    /// Flip one bit of one field, staying inside the field's domain.
    FlipField,
    /// Exchange the whole certificates of two nodes.
    SwapTwoNodes,
    /// Redraw one field uniformly from its domain.
    ResampleField,
    /// Drop the last field of one certificate.
    Truncate,
}

impl Corruption {
    pub const ALL: [Corruption; 4] =
        [Corruption::FlipField, Corruption::SwapTwoNodes, Corruption::ResampleField, Corruption::Truncate];

    pub fn tag(self) -> &'static str {
        match self {
            Corruption::FlipField => "flip-field",
            Corruption::SwapTwoNodes => "swap-two-nodes",
            Corruption::ResampleField => "resample-field",
            Corruption::Truncate => "truncate",
        }
    }
}

impl std::str::FromStr for Corruption {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Corruption::ALL.into_iter().find(|c| c.tag() == s).ok_or_else(|| format!("unknown corruption `{s}`"))
    }
}

fn redraw<R: Rng>(f: &mut IntField, rng: &mut R) -> bool {
    if f.domain.size() < 2 {
        return false;
    }
    loop {
        let x = rng.gen_range(f.domain.lo..=f.domain.hi);
        if x != f.value {
            f.value = x;
            return true;
        }
    }
}

fn flip<R: Rng>(f: &mut IntField, rng: &mut R) -> bool {
    let bits = f.domain.bits().max(1);
    let x = f.value ^ (1u64 << rng.gen_range(0..bits));
    if f.domain.contains(x) {
        f.value = x;
        true
    } else {
        redraw(f, rng)
    }
}

/// Returns a copy of `certs` that differs from it in at least one field, if the
/// strategy can produce one (a single node cannot be swapped, a zero-width domain cannot
/// be changed). Returns `None` otherwise.
pub fn corrupt<R: Rng>(certs: &[Certificate], how: Corruption, rng: &mut R) -> Option<Vec<Certificate>> {
    let mut out = certs.to_vec();
    let n = out.len();
    if n == 0 {
        return None;
    }
    match how {
        Corruption::FlipField | Corruption::ResampleField => {
            let mut slots: Vec<(usize, usize)> = Vec::new();
            for (v, c) in out.iter().enumerate() {
                for (i, f) in c.leaves().iter().enumerate() {
                    if f.domain.size() >= 2 {
                        slots.push((v, i));
                    }
                }
            }
            let &(v, i) = slots.choose(rng)?;
            let mut leaves = out[v].leaves_mut();
            let f = &mut leaves[i];
            let changed = if how == Corruption::FlipField { flip(f, rng) } else { redraw(f, rng) };
            changed.then_some(out)
        }
        Corruption::SwapTwoNodes => {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| out[a] != out[b]).collect();
            let &(a, b) = pairs.choose(rng)?;
            out.swap(a, b);
            Some(out)
        }
        Corruption::Truncate => {
            let candidates: Vec<usize> = (0..n).filter(|&v| !out[v].fields.is_empty()).collect();
            let &v = candidates.choose(rng)?;
            truncate_last(&mut out[v].fields);
            Some(out)
        }
    }
}

fn truncate_last(fields: &mut Vec<Field>) {
    match fields.last_mut() {
        Some(Field::Sub { fields: inner, .. }) if !inner.is_empty() => truncate_last(inner),
        _ => {
            fields.pop();
        }
    }
}

/// Fills every field of `template` with an in-domain value. Identifier fields are drawn
/// from `ids` (or 0 when the domain allows "none") most of the time, since a uniformly
/// random identifier almost never names a real node.
pub fn sample_in_domain<R: Rng>(template: &Certificate, ids: &[u64], rng: &mut R) -> Certificate {
    let mut c = template.clone();
    for f in c.leaves_mut() {
        let d = f.domain;
        f.value = match f.kind {
            ValueKind::Id if !ids.is_empty() && rng.gen_bool(0.9) => {
                if d.lo == 0 && rng.gen_bool(0.2) {
                    0
                } else {
                    *ids.choose(rng).unwrap()
                }
            }
            _ => rng.gen_range(d.lo..=d.hi),
        };
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runtime::toolbox::{encode_all, size_prove};
    use crate::runtime::Scheme;
    use crate::Graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn certs() -> Vec<Certificate> {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        encode_all(Scheme::Size, &g, &size_prove(&g, 0))
    }

    #[test]
    fn every_strategy_changes_something() {
        let base = certs();
        for how in Corruption::ALL {
            for seed in 0..50 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let out = corrupt(&base, how, &mut rng).unwrap();
                assert_ne!(out, base, "{how:?}");
                if how != Corruption::Truncate {
                    assert!(out.iter().all(Certificate::in_domain));
                }
            }
        }
    }

    #[test]
    fn corruption_is_deterministic() {
        let base = certs();
        let a = corrupt(&base, Corruption::FlipField, &mut ChaCha8Rng::seed_from_u64(9));
        let b = corrupt(&base, Corruption::FlipField, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
    }

    #[test]
    fn swap_is_an_involution() {
        let base = certs();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let once = corrupt(&base, Corruption::SwapTwoNodes, &mut rng).unwrap();
        let diff: Vec<usize> = (0..4).filter(|&i| once[i] != base[i]).collect();
        assert_eq!(diff.len(), 2);
        let mut twice = once.clone();
        twice.swap(diff[0], diff[1]);
        assert_eq!(twice, base);
    }

    #[test]
    fn samples_stay_in_domain() {
        let base = certs();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert!(sample_in_domain(&base[0], &[1, 2, 3, 4], &mut rng).in_domain());
        }
    }
}
