//! Certificates, the one-round verification simulator and the shared sub-protocols.

mod cert;
pub mod corrupt;
mod sim;
pub mod toolbox;

use serde::{Deserialize, Serialize};

pub use cert::{CertCodec, CertReader, CertWriter, Certificate, Dims, Domain, Field, IntField, ValueKind};
pub use sim::{run_pls, run_pls_with, NodeView, RunOptions, RunReport, RunVerdict, Verdict};

/// Every scheme the crate can run. The first seven double as graph-class tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    ProperInterval,
    Interval,
    Chordal,
    ProperCircularArc,
    CircularArc,
    Trapezoid,
    Permutation,
    SpanningTree,
    Size,
    StPath,
}

impl Scheme {
    pub const CLASSES: [Scheme; 7] = [
        Scheme::ProperInterval,
        Scheme::Interval,
        Scheme::Chordal,
        Scheme::ProperCircularArc,
        Scheme::CircularArc,
        Scheme::Trapezoid,
        Scheme::Permutation,
    ];

    pub const ALL: [Scheme; 10] = [
        Scheme::ProperInterval,
        Scheme::Interval,
        Scheme::Chordal,
        Scheme::ProperCircularArc,
        Scheme::CircularArc,
        Scheme::Trapezoid,
        Scheme::Permutation,
        Scheme::SpanningTree,
        Scheme::Size,
        Scheme::StPath,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Scheme::ProperInterval => "proper-interval",
            Scheme::Interval => "interval",
            Scheme::Chordal => "chordal",
            Scheme::ProperCircularArc => "proper-circular-arc",
            Scheme::CircularArc => "circular-arc",
            Scheme::Trapezoid => "trapezoid",
            Scheme::Permutation => "permutation",
            Scheme::SpanningTree => "spanning-tree",
            Scheme::Size => "size",
            Scheme::StPath => "st-path",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Scheme> {
        Scheme::ALL.into_iter().find(|s| s.tag() == tag)
    }

    pub fn is_class(self) -> bool {
        Scheme::CLASSES.contains(&self)
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Scheme::from_tag(s).ok_or_else(|| format!("unknown scheme `{s}`"))
    }
}
