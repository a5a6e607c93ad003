//! Declarative group descriptions.
//!
//! JSON form: `{"constructor": "...", "params": {...}, "label": "..."}`.
//! Permutations are 0-based image arrays, Cayley tables are row-major
//! arrays of rows, semidirect actions list one automorphism (image array
//! over the normal factor's indices) per element of the acting group.

use serde::{Deserialize, Serialize};

use crate::build::Builder;
use crate::error::GroupError;
use crate::group::{Group, Limits};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(flatten)]
    pub kind: SpecKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "constructor", content = "params", rename_all = "snake_case")]
pub enum SpecKind {
    Cyclic {
        n: usize,
    },
    /// Order `2n`.
    Dihedral {
        n: usize,
    },
    Symmetric {
        degree: usize,
    },
    Alternating {
        degree: usize,
    },
    /// Dicyclic group of order `4n`; `n = 2` is Q8.
    Quaternion {
        n: usize,
    },
    DirectProduct {
        left: Box<GroupSpec>,
        right: Box<GroupSpec>,
    },
    SemidirectCyclic {
        n: usize,
        m: usize,
        e: usize,
    },
    SemidirectTable {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: Vec<Vec<usize>>,
    },
    FromPermutations {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    FromCayleyTable {
        table: Vec<Vec<usize>>,
    },
}

impl GroupSpec {
    pub fn new(kind: SpecKind) -> Self {
        GroupSpec { kind, label: None }
    }

    pub fn labeled(kind: SpecKind, label: impl Into<String>) -> Self {
        GroupSpec {
            kind,
            label: Some(label.into()),
        }
    }

    pub fn cyclic(n: usize) -> Self {
        Self::new(SpecKind::Cyclic { n })
    }

    pub fn dihedral(n: usize) -> Self {
        Self::new(SpecKind::Dihedral { n })
    }

    pub fn symmetric(degree: usize) -> Self {
        Self::new(SpecKind::Symmetric { degree })
    }

    pub fn alternating(degree: usize) -> Self {
        Self::new(SpecKind::Alternating { degree })
    }

    pub fn quaternion(n: usize) -> Self {
        Self::new(SpecKind::Quaternion { n })
    }

    pub fn semidirect_cyclic(n: usize, m: usize, e: usize) -> Self {
        Self::new(SpecKind::SemidirectCyclic { n, m, e })
    }

    pub fn direct_product(left: GroupSpec, right: GroupSpec) -> Self {
        Self::new(SpecKind::DirectProduct {
            left: Box::new(left),
            right: Box::new(right),
        })
    }

    pub fn semidirect_table(normal: GroupSpec, acting: GroupSpec, action: Vec<Vec<usize>>) -> Self {
        Self::new(SpecKind::SemidirectTable {
            normal: Box::new(normal),
            acting: Box::new(acting),
            action,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// The order the spec will produce, when it can be read off the
    /// parameters without building anything.
    pub fn predicted_order(&self) -> Option<usize> {
        let factorial = |k: usize| (1..=k).try_fold(1usize, |acc, i| acc.checked_mul(i));
        match &self.kind {
            SpecKind::Cyclic { n } => Some(*n),
            SpecKind::Dihedral { n } => n.checked_mul(2),
            SpecKind::Symmetric { degree } => factorial(*degree),
            SpecKind::Alternating { degree } => {
                factorial(*degree).map(|f| if *degree >= 2 { f / 2 } else { f })
            }
            SpecKind::Quaternion { n } => n.checked_mul(4),
            SpecKind::DirectProduct { left, right } => left
                .predicted_order()?
                .checked_mul(right.predicted_order()?),
            SpecKind::SemidirectCyclic { n, m, .. } => n.checked_mul(*m),
            SpecKind::SemidirectTable { normal, acting, .. } => normal
                .predicted_order()?
                .checked_mul(acting.predicted_order()?),
            SpecKind::FromPermutations { .. } => None,
            SpecKind::FromCayleyTable { table } => Some(table.len()),
        }
    }

    pub fn build(&self, limits: &Limits) -> Result<Group, GroupError> {
        if let Some(order) = self.predicted_order() {
            limits.check_order(order)?;
        }
        let b = Builder::new(*limits);
        let mut g = match &self.kind {
            SpecKind::Cyclic { n } => b.cyclic(*n)?,
            SpecKind::Dihedral { n } => b.dihedral(*n)?,
            SpecKind::Symmetric { degree } => b.symmetric(*degree)?,
            SpecKind::Alternating { degree } => b.alternating(*degree)?,
            SpecKind::Quaternion { n } => b.quaternion(*n)?,
            SpecKind::DirectProduct { left, right } => {
                b.direct_product(&left.build(limits)?, &right.build(limits)?)?
            }
            SpecKind::SemidirectCyclic { n, m, e } => b.semidirect_cyclic(*n, *m, *e)?,
            SpecKind::SemidirectTable {
                normal,
                acting,
                action,
            } => b.semidirect_table(&normal.build(limits)?, &acting.build(limits)?, action)?,
            SpecKind::FromPermutations { degree, generators } => {
                b.from_permutations(*degree, generators)?
            }
            SpecKind::FromCayleyTable { table } => b.from_cayley_table(table)?,
        };
        if let Some(label) = &self.label {
            g.set_label(label.clone());
        }
        Ok(g)
    }

    /// Display name: the explicit label, or a compact description.
    pub fn name(&self) -> String {
        if let Some(l) = &self.label {
            return l.clone();
        }
        match &self.kind {
            SpecKind::Cyclic { n } => format!("C{n}"),
            SpecKind::Dihedral { n } => format!("D{}", 2 * n),
            SpecKind::Symmetric { degree } => format!("S{degree}"),
            SpecKind::Alternating { degree } => format!("A{degree}"),
            SpecKind::Quaternion { n } => format!("Dic{n}"),
            SpecKind::DirectProduct { left, right } => {
                format!("{} x {}", left.name(), right.name())
            }
            SpecKind::SemidirectCyclic { n, m, e } => format!("C{n}:C{m}[{e}]"),
            SpecKind::SemidirectTable { normal, acting, .. } => {
                format!("({}) : ({})", normal.name(), acting.name())
            }
            SpecKind::FromPermutations { degree, generators } => {
                format!("<{} perms of degree {degree}>", generators.len())
            }
            SpecKind::FromCayleyTable { table } => format!("table({})", table.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let spec = GroupSpec::semidirect_cyclic(15, 4, 8).with_label("C15:C4");
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            json,
            r#"{"constructor":"semidirect_cyclic","params":{"n":15,"m":4,"e":8},"label":"C15:C4"}"#
        );
        let back: GroupSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn nested_specs_parse() {
        let json = r#"{"constructor":"direct_product","params":{
            "left":{"constructor":"symmetric","params":{"degree":3}},
            "right":{"constructor":"cyclic","params":{"n":2}}}}"#;
        let spec: GroupSpec = serde_json::from_str(json).unwrap();
        assert_eq!(spec.predicted_order(), Some(12));
        assert_eq!(spec.build(&Limits::default()).unwrap().order(), 12);
        assert_eq!(spec.name(), "S3 x C2");
    }

    #[test]
    fn unknown_constructor_is_rejected() {
        let json = r#"{"constructor":"monster","params":{}}"#;
        assert!(serde_json::from_str::<GroupSpec>(json).is_err());
    }

    #[test]
    fn cap_is_checked_before_building() {
        let spec = GroupSpec::cyclic(5000);
        assert_eq!(
            spec.build(&Limits::default()),
            Err(GroupError::OrderCap {
                order: 5000,
                cap: 2000
            })
        );
    }
}
