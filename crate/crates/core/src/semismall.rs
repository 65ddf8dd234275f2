//! Defect of semismallness and the lef filtration of a proper surjective map,
//! computed from its fiber-dimension stratification.
//!
//! A map `f: X → Y` is described by the nonempty loci
//! `Y^i = {y : dim f^{-1}(y) = i}` via pairs `(i, dim Y^i)`. Empty loci are
//! simply left out. The defect is `r(f) = max_i (dim Y^i + 2i) − dim X`, and
//! `f` is `m`-lef when `r(f) ≤ dim X − m`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One nonempty locus: `fiber_dim` = i, `stratum_dim` = dim Y^i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Stratum {
    pub fiber_dim: usize,
    pub stratum_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratification {
    pub dim_x: usize,
    pub dim_y: usize,
    pub strata: Vec<Stratum>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NoStrata,
    TargetLargerThanSource { dim_x: usize, dim_y: usize },
    DuplicateFiberDim { fiber_dim: usize },
    StratumExceedsTarget { fiber_dim: usize, stratum_dim: usize, dim_y: usize },
    PreimageExceedsSource { fiber_dim: usize, stratum_dim: usize, dim_x: usize },
    NoDenseStratum { max_stratum_dim: usize, dim_y: usize },
    MultipleDenseStrata { count: usize },
    GenericFiberMismatch { fiber_dim: usize, expected: usize },
    NoCoveringStratum,
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::NoStrata => "no_strata",
            Violation::TargetLargerThanSource { .. } => "target_larger_than_source",
            Violation::DuplicateFiberDim { .. } => "duplicate_fiber_dim",
            Violation::StratumExceedsTarget { .. } => "stratum_exceeds_target",
            Violation::PreimageExceedsSource { .. } => "preimage_exceeds_source",
            Violation::NoDenseStratum { .. } => "no_dense_stratum",
            Violation::MultipleDenseStrata { .. } => "multiple_dense_strata",
            Violation::GenericFiberMismatch { .. } => "generic_fiber_mismatch",
            Violation::NoCoveringStratum => "no_covering_stratum",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoStrata => write!(f, "no strata given"),
            Violation::TargetLargerThanSource { dim_x, dim_y } => {
                write!(f, "dim Y = {dim_y} exceeds dim X = {dim_x} for a surjective map")
            }
            Violation::DuplicateFiberDim { fiber_dim } => {
                write!(f, "fiber dimension {fiber_dim} listed more than once")
            }
            Violation::StratumExceedsTarget {
                fiber_dim,
                stratum_dim,
                dim_y,
            } => write!(
                f,
                "stratum with fiber dimension {fiber_dim} has dimension {stratum_dim} > dim Y = {dim_y}"
            ),
            Violation::PreimageExceedsSource {
                fiber_dim,
                stratum_dim,
                dim_x,
            } => write!(
                f,
                "stratum ({fiber_dim}, {stratum_dim}) has preimage dimension {} > dim X = {dim_x}",
                fiber_dim + stratum_dim
            ),
            Violation::NoDenseStratum {
                max_stratum_dim,
                dim_y,
            } => write!(
                f,
                "largest stratum has dimension {max_stratum_dim}, but Y has dimension {dim_y}"
            ),
            Violation::MultipleDenseStrata { count } => {
                write!(f, "{count} strata have dimension dim Y; exactly one is dense")
            }
            Violation::GenericFiberMismatch {
                fiber_dim,
                expected,
            } => write!(
                f,
                "dense stratum has fiber dimension {fiber_dim}, expected dim X - dim Y = {expected}"
            ),
            Violation::NoCoveringStratum => {
                write!(f, "no stratum has preimage of dimension dim X")
            }
        }
    }
}

/// The defect together with the exact lef level `dim X − r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LefLevel {
    pub defect: usize,
    pub exact_lef: usize,
}

impl Stratification {
    pub fn new(dim_x: usize, dim_y: usize, strata: &[(usize, usize)]) -> Self {
        Stratification {
            dim_x,
            dim_y,
            strata: strata
                .iter()
                .map(|&(fiber_dim, stratum_dim)| Stratum {
                    fiber_dim,
                    stratum_dim,
                })
                .collect(),
        }
    }

    /// Every well-formedness violation, in a fixed order. Empty means valid.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.strata.is_empty() {
            out.push(Violation::NoStrata);
            return out;
        }
        if self.dim_y > self.dim_x {
            out.push(Violation::TargetLargerThanSource {
                dim_x: self.dim_x,
                dim_y: self.dim_y,
            });
        }
        let mut seen = BTreeSet::new();
        for s in &self.strata {
            if !seen.insert(s.fiber_dim) {
                out.push(Violation::DuplicateFiberDim {
                    fiber_dim: s.fiber_dim,
                });
            }
        }
        for s in &self.strata {
            if s.stratum_dim > self.dim_y {
                out.push(Violation::StratumExceedsTarget {
                    fiber_dim: s.fiber_dim,
                    stratum_dim: s.stratum_dim,
                    dim_y: self.dim_y,
                });
            }
            if s.fiber_dim + s.stratum_dim > self.dim_x {
                out.push(Violation::PreimageExceedsSource {
                    fiber_dim: s.fiber_dim,
                    stratum_dim: s.stratum_dim,
                    dim_x: self.dim_x,
                });
            }
        }
        let max_d = self.strata.iter().map(|s| s.stratum_dim).max().unwrap_or(0);
        if max_d < self.dim_y {
            out.push(Violation::NoDenseStratum {
                max_stratum_dim: max_d,
                dim_y: self.dim_y,
            });
        }
        let dense: Vec<&Stratum> = self
            .strata
            .iter()
            .filter(|s| s.stratum_dim == self.dim_y)
            .collect();
        if dense.len() > 1 {
            out.push(Violation::MultipleDenseStrata { count: dense.len() });
        }
        if self.dim_y <= self.dim_x {
            let expected = self.dim_x - self.dim_y;
            for s in dense {
                if s.fiber_dim != expected {
                    out.push(Violation::GenericFiberMismatch {
                        fiber_dim: s.fiber_dim,
                        expected,
                    });
                }
            }
        }
        if !self
            .strata
            .iter()
            .any(|s| s.fiber_dim + s.stratum_dim == self.dim_x)
        {
            out.push(Violation::NoCoveringStratum);
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidStratification(v))
        }
    }

    /// `max (d + 2i) − dim X` with no validation; may be negative on malformed input.
    pub fn raw_defect(&self) -> i64 {
        self.strata
            .iter()
            .map(|s| (s.stratum_dim + 2 * s.fiber_dim) as i64)
            .max()
            .unwrap_or(i64::MIN / 2)
            - self.dim_x as i64
    }

    pub fn defect(&self) -> Result<usize> {
        self.validate()?;
        Ok(self.raw_defect() as usize)
    }

    pub fn lef_level(&self) -> Result<LefLevel> {
        let defect = self.defect()?;
        Ok(LefLevel {
            defect,
            exact_lef: self.dim_x - defect,
        })
    }

    pub fn is_semismall(&self) -> Result<bool> {
        Ok(self.defect()? == 0)
    }

    /// `r(f) ≤ dim X − m`, for `0 ≤ m ≤ dim X`.
    pub fn is_m_lef(&self, m: usize) -> Result<bool> {
        if m > self.dim_x {
            return Err(Error::InvalidArgument(format!(
                "lef level {m} exceeds dim X = {}",
                self.dim_x
            )));
        }
        Ok(self.defect()? <= self.dim_x - m)
    }

    /// `dim Y`: the Kodaira dimension witnessed by the generic fiber, which
    /// bounds the exact lef level from above.
    pub fn nd_lower_bound(&self) -> Result<usize> {
        self.validate()?;
        Ok(self.dim_y)
    }
}

/// Guaranteed lef level of `K + L` for a `k`-lef `K` and an `l`-lef `L`.
pub fn lef_of_sum(k: usize, l: usize) -> usize {
    k.max(l)
}

/// For `g = π ∘ f` the defects satisfy `r(f) ≤ r(g)`; checks this on user
/// supplied stratifications of `f` and `g` (which must share the source).
pub fn composition_consistent(f: &Stratification, g: &Stratification) -> Result<bool> {
    if f.dim_x != g.dim_x {
        return Err(Error::DimensionMismatch {
            expected: f.dim_x,
            found: g.dim_x,
        });
    }
    Ok(f.defect()? <= g.defect()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blow_up() -> Stratification {
        Stratification::new(2, 2, &[(0, 2), (1, 0)])
    }

    #[test]
    fn validate_examples() {
        assert!(blow_up().violations().is_empty());

        let bad = Stratification::new(2, 2, &[(0, 2), (1, 2)]);
        let names: Vec<_> = bad.violations().iter().map(Violation::name).collect();
        assert!(names.contains(&"multiple_dense_strata"));
        assert!(names.contains(&"generic_fiber_mismatch"));

        let bad = Stratification::new(2, 1, &[(1, 1), (2, 1)]);
        let names: Vec<_> = bad.violations().iter().map(Violation::name).collect();
        assert!(names.contains(&"preimage_exceeds_source"));
    }

    #[test]
    fn defect_examples() {
        assert_eq!(blow_up().defect().unwrap(), 0);
        let s = Stratification::new(3, 3, &[(0, 3), (2, 0)]);
        assert_eq!(s.lef_level().unwrap(), LefLevel { defect: 1, exact_lef: 2 });
        assert_eq!(Stratification::new(4, 4, &[(0, 4)]).defect().unwrap(), 0);
        assert!(Stratification::new(2, 2, &[(0, 2), (1, 2)]).defect().is_err());
    }

    #[test]
    fn m_lef_examples() {
        assert!(blow_up().is_m_lef(2).unwrap());
        let s = Stratification::new(3, 3, &[(0, 3), (2, 0)]);
        assert!(s.is_m_lef(2).unwrap());
        assert!(!s.is_m_lef(3).unwrap());
        assert!(s.is_m_lef(0).unwrap());
        assert!(s.is_m_lef(4).is_err());
    }

    #[test]
    fn lef_of_sum_examples() {
        assert_eq!(lef_of_sum(2, 3), 3);
        assert_eq!(lef_of_sum(0, 0), 0);
        assert_eq!(lef_of_sum(5, 5), 5);
    }

    #[test]
    fn nd_bound_examples() {
        assert_eq!(blow_up().nd_lower_bound().unwrap(), 2);
        let s = Stratification::new(3, 2, &[(1, 2), (2, 0)]);
        assert_eq!(s.nd_lower_bound().unwrap(), 2);
        assert_eq!(s.lef_level().unwrap().exact_lef, 2);
        let c = Stratification::new(3, 0, &[(3, 0)]);
        assert_eq!(c.nd_lower_bound().unwrap(), 0);
        assert_eq!(c.lef_level().unwrap().exact_lef, 0);
    }

    #[test]
    fn composition_check() {
        // X -> Y small contraction of a curve, then Y -> point.
        let f = Stratification::new(2, 2, &[(0, 2), (1, 0)]);
        let g = Stratification::new(2, 0, &[(2, 0)]);
        assert!(composition_consistent(&f, &g).unwrap());
        assert!(!composition_consistent(&g, &f).unwrap());
    }
}
