//! Degree witnesses for filtering and directed families, the kernel
//! sandwich, and certified elliptic-by-free sandwiches.

use serde::Serialize;

use crate::cayley::{FactorClassification, Model};
use crate::error::{Error, Result};
use crate::lattice::{FamilyKind, NormalFamily};

/// The star action `α` of each family member, with the member(s) attaining
/// the extremal one. `α` is monotone, so the extremum is unique as a group.
fn alpha_extremum(model: &Model, family: &NormalFamily, smallest: bool) -> Result<usize> {
    let alphas: Vec<_> = family
        .members()
        .iter()
        .map(|&m| (m, model.star_action(m)))
        .collect();
    let extremal = alphas.iter().find(|(_, a)| {
        alphas.iter().all(|(_, b)| {
            if smallest {
                a.is_subgroup_of(b)
            } else {
                b.is_subgroup_of(a)
            }
        })
    });
    let Some((_, target)) = extremal else {
        return Err(Error::InvalidFamily {
            kind: if smallest { "filtering" } else { "directed" },
            detail: "star actions of the family have no extremum".into(),
        });
    };
    // Among members realising the extremum prefer the lowest member for
    // filtering families and the highest for directed ones.
    let realising = alphas.iter().filter(|(_, a)| a == target).map(|(m, _)| *m);
    let chosen = if smallest {
        realising.min()
    } else {
        realising.max()
    };
    Ok(chosen.expect("the extremum is realised"))
}

fn require_kind(family: &NormalFamily, kind: FamilyKind) -> Result<()> {
    if family.kind() == kind {
        Ok(())
    } else {
        Err(Error::PreconditionFailed(format!(
            "expected a {kind:?} family, got {:?}",
            family.kind()
        )))
    }
}

/// A member `N` of a filtering family with `deg(Γ/N) = deg(Γ/∩family)`.
pub fn filtering_degree_witness(model: &Model, family: &NormalFamily) -> Result<usize> {
    require_kind(family, FamilyKind::Filtering)?;
    let n = alpha_extremum(model, family, true)?;
    let bottom = model.lattice().family_meet(family);
    if model.quotient_degree(n) != model.quotient_degree(bottom) {
        return Err(Error::VerificationFailed(format!(
            "filtering witness {n} has quotient degree {} but the family meet has {}",
            model.quotient_degree(n),
            model.quotient_degree(bottom)
        )));
    }
    Ok(n)
}

/// A member `N` of a directed family with `deg(Γ/N) = deg(Γ/⟨family⟩)`.
pub fn directed_degree_witness(model: &Model, family: &NormalFamily) -> Result<usize> {
    require_kind(family, FamilyKind::Directed)?;
    let n = alpha_extremum(model, family, false)?;
    let top = model.lattice().family_join(family);
    if model.quotient_degree(n) != model.quotient_degree(top) {
        return Err(Error::VerificationFailed(format!(
            "directed witness {n} has quotient degree {} but the family join has {}",
            model.quotient_degree(n),
            model.quotient_degree(top)
        )));
    }
    Ok(n)
}

/// Given `base ≤ n` with `deg(Γ/n) = deg(Γ/base)`, returns
/// `L = n ∩ ker(G ↷ Γ/base)`. `L` acts trivially on `Γ/base` and `n/L` is free.
pub fn kernel_sandwich_over(model: &Model, base: usize, n: usize) -> Result<usize> {
    let lattice = model.lattice();
    if !lattice.leq(base, n) {
        return Err(Error::IntervalEmpty {
            lower: base,
            upper: n,
        });
    }
    let (dn, db) = (model.quotient_degree(n), model.quotient_degree(base));
    if dn != db {
        return Err(Error::PreconditionFailed(format!(
            "deg(Γ/N) = {dn} differs from {db}"
        )));
    }
    Ok(lattice.meet(n, model.quotient_kernel(base)))
}

/// [`kernel_sandwich_over`] on `Γ` itself.
pub fn kernel_sandwich(model: &Model, n: usize) -> Result<usize> {
    kernel_sandwich_over(model, model.lattice().bottom(), n)
}

/// `bottom ≤ middle ≤ top` with `middle/bottom` elliptic and `top/middle` free.
/// For a filtering family `bottom = ∩family` and `top` is the chosen member;
/// for a directed family `bottom` is the chosen member and `top = ⟨family⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SandwichCertificate {
    pub family: NormalFamily,
    pub chosen: usize,
    pub bottom: usize,
    pub middle: usize,
    pub top: usize,
    pub lower_factor: FactorClassification,
    pub upper_factor: FactorClassification,
}

impl SandwichCertificate {
    /// Re-derives both tags from scratch.
    pub fn verify(&self, model: &Model) -> Result<()> {
        let lattice = model.lattice();
        if !self.family.members().contains(&self.chosen) {
            return Err(Error::VerificationFailed(
                "chosen subgroup is not a family member".into(),
            ));
        }
        let (bottom, top) = match self.family.kind() {
            FamilyKind::Filtering => (lattice.family_meet(&self.family), self.chosen),
            FamilyKind::Directed => (self.chosen, lattice.family_join(&self.family)),
            FamilyKind::Plain => {
                return Err(Error::VerificationFailed(
                    "plain families carry no certificate".into(),
                ))
            }
        };
        if (bottom, top) != (self.bottom, self.top) {
            return Err(Error::VerificationFailed(
                "certificate endpoints are wrong".into(),
            ));
        }
        let lower = model.classify_factor(self.bottom, self.middle)?;
        let upper = model.classify_factor(self.middle, self.top)?;
        if !lower.elliptic {
            return Err(Error::VerificationFailed(format!(
                "{}/{} is not elliptic",
                self.middle, self.bottom
            )));
        }
        if !upper.free {
            return Err(Error::VerificationFailed(format!(
                "{}/{} is not free",
                self.top, self.middle
            )));
        }
        Ok(())
    }
}

/// Searches for a sandwich certificate, trying the degree witness first and
/// then the other members in canonical order. Within each interval the first
/// middle term in canonical order that passes both tags is taken.
pub fn essential_finiteness(model: &Model, family: &NormalFamily) -> Result<SandwichCertificate> {
    let lattice = model.lattice();
    let witness = match family.kind() {
        FamilyKind::Filtering => filtering_degree_witness(model, family)?,
        FamilyKind::Directed => directed_degree_witness(model, family)?,
        FamilyKind::Plain => {
            return Err(Error::PreconditionFailed(
                "family must be filtering or directed".into(),
            ))
        }
    };
    let mut candidates = vec![witness];
    candidates.extend(family.members().iter().copied().filter(|&m| m != witness));

    let mut scanned = Vec::new();
    for chosen in candidates {
        let (bottom, top) = match family.kind() {
            FamilyKind::Filtering => (lattice.family_meet(family), chosen),
            _ => (chosen, lattice.family_join(family)),
        };
        scanned.push((bottom, top));
        for middle in lattice.interval(bottom, top)? {
            let lower_factor = model.classify_factor(bottom, middle)?;
            if !lower_factor.elliptic {
                continue;
            }
            let upper_factor = model.classify_factor(middle, top)?;
            if !upper_factor.free {
                continue;
            }
            let cert = SandwichCertificate {
                family: family.clone(),
                chosen,
                bottom,
                middle,
                top,
                lower_factor,
                upper_factor,
            };
            cert.verify(model)?;
            return Ok(cert);
        }
    }
    Err(Error::NoCertificate { scanned })
}
