//! The complete lattice of normal subgroups of a finite group.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, QuotientGroup, Subgroup};

/// All normal subgroups of a group, in canonical order: ascending order, then
/// lexicographic on sorted element lists. Member `0` is the trivial subgroup
/// and the last member is the whole group.
pub struct NormalLattice {
    group: Arc<FiniteGroup>,
    members: Vec<Subgroup>,
    lookup: HashMap<FixedBitSet, usize>,
    below: Vec<FixedBitSet>,
    meet: Vec<usize>,
    join: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Maximal,
    Minimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Filtering,
    Directed,
    Plain,
}

impl FamilyKind {
    fn name(self) -> &'static str {
        match self {
            FamilyKind::Filtering => "filtering",
            FamilyKind::Directed => "directed",
            FamilyKind::Plain => "plain",
        }
    }
}

/// A set of lattice members, optionally known to be filtering or directed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalFamily {
    members: Vec<usize>,
    kind: FamilyKind,
}

impl NormalFamily {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }
}

/// Outcome of the just-non-P search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum JustNonP {
    /// Every quotient `G/N` with `N` proper has the property, `G` itself included.
    AllQuotientsHaveP,
    /// `G/kernel` lacks the property while each of its proper non-trivial
    /// quotients, `G/M` for the listed `M`, has it.
    Witness {
        kernel: usize,
        verified_above: Vec<usize>,
    },
}

impl NormalLattice {
    /// Joins of normal closures of conjugacy classes, checked for closure
    /// under meet and join.
    pub fn enumerate(group: Arc<FiniteGroup>) -> Result<Self> {
        let mut found: Vec<Subgroup> = vec![group.trivial_subgroup()];
        let mut lookup: HashMap<FixedBitSet, usize> = HashMap::new();
        lookup.insert(found[0].members().clone(), 0);

        for class in group.conjugacy_classes() {
            let n = group.normal_closure(&[class[0]]);
            if !lookup.contains_key(n.members()) {
                lookup.insert(n.members().clone(), found.len());
                found.push(n);
            }
        }

        // Pairwise joins until nothing new appears. The product NM of normal
        // subgroups has order |N||M|/|N∩M|, which often identifies the join
        // among existing members without another closure.
        let mut i = 0;
        while i < found.len() {
            for j in 0..i {
                let (a, b) = (&found[i], &found[j]);
                if a.is_subgroup_of(b) || b.is_subgroup_of(a) {
                    continue;
                }
                let mut common = a.members().clone();
                common.intersect_with(b.members());
                let target = a.order() * b.order() / common.count_ones(..);
                let known = found
                    .iter()
                    .any(|m| m.order() == target && a.is_subgroup_of(m) && b.is_subgroup_of(m));
                if known {
                    continue;
                }
                let joined = group.join(a, b)?;
                if !lookup.contains_key(joined.members()) {
                    lookup.insert(joined.members().clone(), found.len());
                    found.push(joined);
                }
            }
            i += 1;
        }

        found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp_elements(b)));
        let lookup: HashMap<FixedBitSet, usize> = found
            .iter()
            .enumerate()
            .map(|(i, m)| (m.members().clone(), i))
            .collect();
        let n = found.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (a, ma) in found.iter().enumerate() {
            for (b, mb) in found.iter().enumerate() {
                if ma.is_subgroup_of(mb) {
                    below[b].insert(a);
                }
            }
        }

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut common = found[a].members().clone();
                common.intersect_with(found[b].members());
                meet[a * n + b] = *lookup.get(&common).ok_or_else(|| {
                    Error::VerificationFailed(format!("meet of members {a} and {b} is missing"))
                })?;
                // Smallest member above both; unique because the product NM is normal.
                let mut upper = FixedBitSet::with_capacity(n);
                upper.insert_range(..);
                for m in 0..n {
                    if !(below[m].contains(a) && below[m].contains(b)) {
                        upper.remove(m);
                    }
                }
                let least = upper
                    .ones()
                    .find(|&m| upper.ones().all(|x| below[x].contains(m)))
                    .ok_or_else(|| {
                        Error::VerificationFailed(format!("join of members {a} and {b} is missing"))
                    })?;
                join[a * n + b] = least;
            }
        }

        for m in &found {
            if !group.is_normal(m) {
                return Err(Error::VerificationFailed(
                    "enumerated lattice member is not normal".into(),
                ));
            }
        }

        Ok(NormalLattice {
            group,
            members: found,
            lookup,
            below,
            meet,
            join,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, i: usize) -> &Subgroup {
        &self.members[i]
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.members.len() - 1
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        if h.group_id() != self.group.id() {
            return None;
        }
        self.lookup.get(h.members()).copied()
    }

    pub fn require(&self, h: &Subgroup) -> Result<usize> {
        if h.group_id() != self.group.id() {
            return Err(Error::SubgroupMismatch);
        }
        self.index_of(h).ok_or(Error::NotInLattice)
    }

    pub fn order(&self, i: usize) -> usize {
        self.members[i].order()
    }

    /// `a ≤ b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    /// Members `m` with `lower ≤ m ≤ upper`, in canonical order.
    pub fn interval(&self, lower: usize, upper: usize) -> Result<Vec<usize>> {
        if !self.leq(lower, upper) {
            return Err(Error::IntervalEmpty { lower, upper });
        }
        Ok(self.below[upper]
            .ones()
            .filter(|&m| self.leq(lower, m))
            .collect())
    }

    /// Members strictly between `lower` and `upper`.
    pub fn open_interval(&self, lower: usize, upper: usize) -> Vec<usize> {
        self.below[upper]
            .ones()
            .filter(|&m| m != lower && m != upper && self.leq(lower, m))
            .collect()
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing in between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.len() {
            for a in self.below[b].ones() {
                if a != b && self.open_interval(a, b).is_empty() {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// A predicate-satisfying member of `[lower, upper]` that is maximal (or
    /// minimal) under containment. Ties go to the first candidate in canonical
    /// order.
    pub fn extremum_in_interval(
        &self,
        lower: usize,
        upper: usize,
        mut predicate: impl FnMut(usize) -> bool,
        direction: Direction,
    ) -> Result<Option<usize>> {
        let candidates: Vec<usize> = self
            .interval(lower, upper)?
            .into_iter()
            .filter(|&m| predicate(m))
            .collect();
        Ok(candidates.iter().copied().find(|&m| {
            candidates.iter().all(|&x| {
                x == m
                    || match direction {
                        Direction::Maximal => !self.leq(m, x),
                        Direction::Minimal => !self.leq(x, m),
                    }
            })
        }))
    }

    /// Checks the family property and wraps the member list.
    pub fn family(&self, members: &[usize], kind: FamilyKind) -> Result<NormalFamily> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::InvalidFamily {
                kind: kind.name(),
                detail: "family is empty".into(),
            });
        }
        if let Some(&bad) = members.iter().find(|&&m| m >= self.len()) {
            return Err(Error::InvalidFamily {
                kind: kind.name(),
                detail: format!("member {bad} is not in the lattice"),
            });
        }
        for &a in &members {
            for &b in &members {
                let ok = match kind {
                    FamilyKind::Filtering => {
                        members.iter().any(|&c| self.leq(c, a) && self.leq(c, b))
                    }
                    FamilyKind::Directed => {
                        members.iter().any(|&c| self.leq(a, c) && self.leq(b, c))
                    }
                    FamilyKind::Plain => true,
                };
                if !ok {
                    return Err(Error::InvalidFamily {
                        kind: kind.name(),
                        detail: format!("members {a} and {b} have no bound inside the family"),
                    });
                }
            }
        }
        Ok(NormalFamily { members, kind })
    }

    /// Smallest superset of `seed` closed under pairwise meet.
    pub fn close_filtering(&self, seed: &[usize]) -> Result<NormalFamily> {
        self.close_under(seed, FamilyKind::Filtering, |a, b| self.meet(a, b))
    }

    /// Smallest superset of `seed` closed under pairwise join.
    pub fn close_directed(&self, seed: &[usize]) -> Result<NormalFamily> {
        self.close_under(seed, FamilyKind::Directed, |a, b| self.join(a, b))
    }

    fn close_under(
        &self,
        seed: &[usize],
        kind: FamilyKind,
        op: impl Fn(usize, usize) -> usize,
    ) -> Result<NormalFamily> {
        if seed.is_empty() {
            return Err(Error::InvalidFamily {
                kind: kind.name(),
                detail: "seed is empty".into(),
            });
        }
        let mut in_family = FixedBitSet::with_capacity(self.len());
        let mut list = Vec::new();
        for &s in seed {
            if s >= self.len() {
                return Err(Error::NotInLattice);
            }
            if !in_family.contains(s) {
                in_family.insert(s);
                list.push(s);
            }
        }
        let mut i = 0;
        while i < list.len() {
            for j in 0..=i {
                let c = op(list[i], list[j]);
                if !in_family.contains(c) {
                    in_family.insert(c);
                    list.push(c);
                }
            }
            i += 1;
        }
        Ok(NormalFamily {
            members: in_family.ones().collect(),
            kind,
        })
    }

    /// Intersection of a family's members.
    pub fn family_meet(&self, family: &NormalFamily) -> usize {
        family
            .members
            .iter()
            .fold(self.top(), |acc, &m| self.meet(acc, m))
    }

    /// Subgroup generated by a family's members.
    pub fn family_join(&self, family: &NormalFamily) -> usize {
        family
            .members
            .iter()
            .fold(self.bottom(), |acc, &m| self.join(acc, m))
    }

    pub fn quotient(&self, i: usize) -> Result<QuotientGroup> {
        self.group.quotient(&self.members[i])
    }

    /// Finds a quotient `G/N` that fails `property` while all of its proper
    /// non-trivial quotients satisfy it, or reports that no proper `N` fails.
    pub fn just_non_p(
        &self,
        mut property: impl FnMut(&QuotientGroup) -> Result<bool>,
    ) -> Result<JustNonP> {
        let top = self.top();
        let mut has_p = vec![true; self.len()];
        for (i, slot) in has_p.iter_mut().enumerate() {
            if i != top {
                *slot = property(&self.quotient(i)?)?;
            }
        }
        let kernel = self.extremum_in_interval(
            self.bottom(),
            top,
            |m| m != top && !has_p[m],
            Direction::Maximal,
        )?;
        let Some(kernel) = kernel else {
            return Ok(JustNonP::AllQuotientsHaveP);
        };
        let verified_above = self.open_interval(kernel, top);
        if let Some(&bad) = verified_above.iter().find(|&&m| !has_p[m]) {
            return Err(Error::VerificationFailed(format!(
                "quotient by member {bad} above the maximal witness {kernel} lacks the property"
            )));
        }
        Ok(JustNonP::Witness {
            kernel,
            verified_above,
        })
    }
}
