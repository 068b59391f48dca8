//! Short names for builtin categories and Q-systems.
//!
//! Categories: `builtin:<factor>[x<factor>...]` where a factor is `trivial`,
//! `fibonacci`, `ising`, `su2-<k>`, `pointed-z<n>[-p<p>]` or `rev(<factor>)`.
//! Factors are multiplied left to right.

use qsys_core::mtc::{self, CategoryData, Family};

use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Family(Family),
    Reversed(Box<Factor>),
}

impl Factor {
    pub fn build(&self) -> Result<CategoryData, Error> {
        match self {
            Factor::Family(f) => Ok(mtc::builtin_category(f)?),
            Factor::Reversed(inner) => Ok(mtc::reverse_braiding(&inner.build()?)),
        }
    }

    fn render(&self) -> String {
        match self {
            Factor::Family(Family::Trivial) => "trivial".into(),
            Factor::Family(Family::Fibonacci) => "fibonacci".into(),
            Factor::Family(Family::Ising) => "ising".into(),
            Factor::Family(Family::Su2(k)) => format!("su2-{k}"),
            Factor::Family(Family::Pointed(parts)) => {
                let (n, p) = parts[0];
                format!("pointed-z{n}-p{p}")
            }
            Factor::Reversed(inner) => format!("rev({})", inner.render()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategorySpec {
    pub factors: Vec<Factor>,
}

impl CategorySpec {
    pub fn parse(s: &str) -> Result<Self, Error> {
        let body = s
            .strip_prefix("builtin:")
            .ok_or_else(|| Error::Usage(format!("not a builtin spec: {s}")))?;
        let factors = body.split('x').map(parse_factor).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { factors })
    }

    pub fn build(&self) -> Result<CategoryData, Error> {
        let mut it = self.factors.iter();
        let first = it.next().ok_or_else(|| Error::Usage("empty category spec".into()))?;
        let mut acc = first.build()?;
        for f in it {
            acc = mtc::deligne_product(&acc, &f.build()?);
        }
        Ok(acc)
    }

    /// `C` followed by `rev(C)`, the home of Longo-Rehren Q-systems.
    pub fn doubled(&self) -> Result<Self, Error> {
        if self.factors.len() != 1 {
            return Err(Error::Usage("doubling needs a single-factor category".into()));
        }
        let f = self.factors[0].clone();
        let rev = match f.clone() {
            Factor::Reversed(inner) => *inner,
            other => Factor::Reversed(Box::new(other)),
        };
        Ok(Self { factors: vec![f, rev] })
    }

    /// Canonical spelling, with explicit pointed parameters.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(Factor::render).collect();
        format!("builtin:{}", parts.join("x"))
    }
}

fn parse_factor(s: &str) -> Result<Factor, Error> {
    if let Some(inner) = s.strip_prefix("rev(").and_then(|r| r.strip_suffix(')')) {
        return Ok(Factor::Reversed(Box::new(parse_factor(inner)?)));
    }
    let bad = || Error::Usage(format!("unknown builtin category `{s}`"));
    let family = match s {
        "trivial" => Family::Trivial,
        "fibonacci" => Family::Fibonacci,
        "ising" => Family::Ising,
        _ => {
            if let Some(k) = s.strip_prefix("su2-") {
                Family::Su2(k.parse().map_err(|_| bad())?)
            } else if let Some(rest) = s.strip_prefix("pointed-z") {
                let (n, p) = match rest.split_once("-p") {
                    Some((n, p)) => {
                        let n: u32 = n.parse().map_err(|_| bad())?;
                        (n, p.parse().map_err(|_| bad())?)
                    }
                    None => {
                        let n: u32 = rest.parse().map_err(|_| bad())?;
                        (n, mtc::default_pointed_parameter(n))
                    }
                };
                Family::Pointed(vec![(n, p)])
            } else {
                return Err(bad());
            }
        }
    };
    Ok(Factor::Family(family))
}

/// Builtin Q-systems, built relative to a category spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QSystemSpec {
    Trivial,
    /// Permutation Q-system of charge conjugation.
    PermC,
    /// Permutation Q-system of an explicit label map.
    Perm(Vec<usize>),
    /// Longo-Rehren Q-system of the identity in `C⊠rev(C)`.
    Lr,
    /// Group algebra of a set of invertible labels.
    Isotropic(Vec<String>),
}

impl QSystemSpec {
    pub fn parse(s: &str) -> Result<Self, Error> {
        let body = s
            .strip_prefix("builtin:")
            .ok_or_else(|| Error::Usage(format!("not a builtin Q-system spec: {s}")))?;
        let bad = || Error::Usage(format!("unknown builtin Q-system `{s}`"));
        Ok(match body {
            "trivial" => QSystemSpec::Trivial,
            "perm-C" => QSystemSpec::PermC,
            "lr" => QSystemSpec::Lr,
            _ => {
                if let Some(map) = body.strip_prefix("perm-") {
                    let v = map.split(',').map(|t| t.parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
                    QSystemSpec::Perm(v)
                } else if let Some(labels) = body.strip_prefix("isotropic-") {
                    QSystemSpec::Isotropic(labels.split(',').map(String::from).collect())
                } else {
                    return Err(bad());
                }
            }
        })
    }

    /// Whether the Q-system lives in `C⊠rev(C)` rather than in `C`.
    pub fn lives_in_double(&self) -> bool {
        matches!(self, QSystemSpec::Lr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_and_reversal() {
        let s = CategorySpec::parse("builtin:fibonaccixrev(fibonacci)").unwrap();
        assert_eq!(s.factors.len(), 2);
        assert!(matches!(s.factors[1], Factor::Reversed(_)));
        assert_eq!(s.render(), "builtin:fibonaccixrev(fibonacci)");
    }

    #[test]
    fn pointed_default_parameter_is_explicit_after_render() {
        let s = CategorySpec::parse("builtin:pointed-z3").unwrap();
        assert_eq!(s.render(), "builtin:pointed-z3-p2");
        let s = CategorySpec::parse("builtin:pointed-z4-p3").unwrap();
        assert_eq!(s.factors[0], Factor::Family(Family::Pointed(vec![(4, 3)])));
    }

    #[test]
    fn doubling_undoes_reversal() {
        let s = CategorySpec::parse("builtin:rev(ising)").unwrap().doubled().unwrap();
        assert_eq!(s.render(), "builtin:rev(ising)xising");
    }

    #[test]
    fn rejects_garbage() {
        assert!(CategorySpec::parse("fibonacci").is_err());
        assert!(CategorySpec::parse("builtin:su2-").is_err());
        assert!(QSystemSpec::parse("builtin:perm-a,b").is_err());
    }

    #[test]
    fn qsystem_specs() {
        assert_eq!(QSystemSpec::parse("builtin:perm-C").unwrap(), QSystemSpec::PermC);
        assert_eq!(QSystemSpec::parse("builtin:perm-0,2,1").unwrap(), QSystemSpec::Perm(vec![0, 2, 1]));
        assert_eq!(
            QSystemSpec::parse("builtin:isotropic-0,3,6").unwrap(),
            QSystemSpec::Isotropic(vec!["0".into(), "3".into(), "6".into()])
        );
    }
}
