//! Chief factors, the degree-guided refinement into essentially chief series,
//! association classes of non-abelian chief factors, and the audits built on
//! them.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::cayley::{FactorClassification, Model};
use crate::error::{Error, Result};
use crate::finiteness::kernel_sandwich_over;
use crate::lattice::{Direction, NormalLattice};

/// `upper / lower` for lattice members `lower < upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NormalFactor {
    pub lower: usize,
    pub upper: usize,
}

impl NormalFactor {
    pub fn new(lattice: &NormalLattice, lower: usize, upper: usize) -> Result<Self> {
        if lower == upper || !lattice.leq(lower, upper) {
            return Err(Error::IntervalEmpty { lower, upper });
        }
        Ok(NormalFactor { lower, upper })
    }
}

pub fn is_chief(lattice: &NormalLattice, lower: usize, upper: usize) -> bool {
    lower != upper && lattice.leq(lower, upper) && lattice.open_interval(lower, upper).is_empty()
}

pub fn is_abelian_factor(lattice: &NormalLattice, f: NormalFactor) -> bool {
    lattice
        .group()
        .is_abelian_factor(lattice.member(f.upper), lattice.member(f.lower))
        .expect("lattice members share a group and are nested")
}

/// `K₁L₂ = K₂L₁` and `Kᵢ ∩ L₁L₂ = Lᵢ` for both factors.
pub fn is_associated(lattice: &NormalLattice, a: NormalFactor, b: NormalFactor) -> bool {
    let lower_product = lattice.join(a.lower, b.lower);
    lattice.join(a.upper, b.lower) == lattice.join(b.upper, a.lower)
        && lattice.meet(a.upper, lower_product) == a.lower
        && lattice.meet(b.upper, lower_product) == b.lower
}

/// All non-abelian chief factors `A/B` with `lower ≤ B < A ≤ upper`.
pub fn nonabelian_chief_factors(
    lattice: &NormalLattice,
    lower: usize,
    upper: usize,
) -> Vec<NormalFactor> {
    let Ok(members) = lattice.interval(lower, upper) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for &b in &members {
        for &a in &members {
            if is_chief(lattice, b, a) {
                let f = NormalFactor { lower: b, upper: a };
                if !is_abelian_factor(lattice, f) {
                    out.push(f);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// An association class of non-abelian chief factors.
#[derive(Debug, Serialize)]
pub struct ChiefBlock {
    pub representatives: Vec<NormalFactor>,
    /// Relative to the Cayley-Abels spec of the model the block was built in.
    pub negligible: bool,
    /// A representative carrying the elliptic or free tag.
    pub negligibility_witness: Option<FactorClassification>,
    #[serde(skip)]
    minimal_cover: OnceLock<usize>,
}

impl ChiefBlock {
    pub fn contains(&self, f: NormalFactor) -> bool {
        self.representatives.binary_search(&f).is_ok()
    }

    pub fn representative(&self) -> NormalFactor {
        self.representatives[0]
    }
}

/// Whether `m/n` covers the block of `block`.
pub fn covers(lattice: &NormalLattice, m: usize, n: usize, block: &ChiefBlock) -> bool {
    covers_factor(lattice, m, n, block.representative())
}

/// Whether some non-abelian chief factor inside `[n, m]` is associated to `rep`.
pub fn covers_factor(lattice: &NormalLattice, m: usize, n: usize, rep: NormalFactor) -> bool {
    if m == n || !lattice.leq(n, m) {
        return false;
    }
    nonabelian_chief_factors(lattice, n, m)
        .into_iter()
        .any(|f| is_associated(lattice, f, rep))
}

/// Partitions all non-abelian chief factors into association classes and
/// marks negligibility against the model's graph.
pub fn blocks(model: &Model) -> Result<Vec<ChiefBlock>> {
    let lattice = model.lattice();
    let factors = nonabelian_chief_factors(lattice, lattice.bottom(), lattice.top());
    let n = factors.len();
    let mut uf = UnionFind::<usize>::new(n);
    let mut assoc = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            assoc[i * n + j] = is_associated(lattice, factors[i], factors[j]);
            if assoc[i * n + j] {
                uf.union(i, j);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if uf.equiv(i, j) && !assoc[i * n + j] {
                return Err(Error::AssociationNotTransitive(format!(
                    "{:?} and {:?} are linked through associated factors but not associated",
                    factors[i], factors[j]
                )));
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<NormalFactor>> = BTreeMap::new();
    for (i, &f) in factors.iter().enumerate() {
        classes.entry(uf.find(i)).or_default().push(f);
    }
    let mut out = Vec::new();
    for reps in classes.into_values() {
        let mut witness = None;
        for f in &reps {
            let c = model.classify_factor(f.lower, f.upper)?;
            if c.elliptic_or_free() {
                witness = Some(c);
                break;
            }
        }
        out.push(ChiefBlock {
            representatives: reps,
            negligible: witness.is_some(),
            negligibility_witness: witness,
            minimal_cover: OnceLock::new(),
        });
    }
    out.sort_by_key(|b| b.representative());
    Ok(out)
}

/// A normal series `1 = G₀ ≤ … ≤ Gₙ = G` with each factor classified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalSeries {
    pub terms: Vec<usize>,
    pub classifications: Vec<FactorClassification>,
}

impl NormalSeries {
    /// Validates the chain and classifies every factor.
    pub fn new(model: &Model, terms: Vec<usize>) -> Result<Self> {
        let lattice = model.lattice();
        if terms.first() != Some(&lattice.bottom()) || terms.last() != Some(&lattice.top()) {
            return Err(Error::PreconditionFailed(
                "a normal series must run from the trivial subgroup to the group".into(),
            ));
        }
        for (i, w) in terms.windows(2).enumerate() {
            if !lattice.leq(w[0], w[1]) {
                return Err(Error::AnchorsNotAscending { position: i + 1 });
            }
        }
        let classifications = terms
            .windows(2)
            .map(|w| model.classify_factor(w[0], w[1]))
            .collect::<Result<_>>()?;
        Ok(NormalSeries {
            terms,
            classifications,
        })
    }

    /// Number of factors.
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn factor(&self, i: usize) -> NormalFactor {
        NormalFactor {
            lower: self.terms[i],
            upper: self.terms[i + 1],
        }
    }

    /// Every factor is elliptic, free or chief (and proper).
    pub fn is_essentially_chief(&self) -> bool {
        self.first_untagged().is_none()
    }

    fn first_untagged(&self) -> Option<usize> {
        self.classifications
            .iter()
            .position(|c| c.lower == c.upper || !c.has_tag())
    }

    /// Factors that are neither elliptic nor free.
    pub fn rigid_factor_count(&self) -> usize {
        self.classifications
            .iter()
            .filter(|c| !c.elliptic_or_free())
            .count()
    }
}

/// One round `C ≤ K ≤ D` of the refinement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RefinementStep {
    pub c: usize,
    pub k: usize,
    pub d: usize,
}

/// `H = C₀ ≤ K₀ ≤ D₀ ≤ C₁ ≤ … ≤ Kₙ ≤ Dₙ = L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinementSegment {
    pub steps: Vec<RefinementStep>,
    pub start_degree: usize,
    pub end_degree: usize,
}

impl RefinementSegment {
    pub fn terms(&self) -> Vec<usize> {
        self.steps.iter().flat_map(|s| [s.c, s.k, s.d]).collect()
    }

    /// The `n` of the segment: the number of chief factors `Cᵢ/Dᵢ₋₁`.
    pub fn chief_count(&self) -> usize {
        self.steps.len() - 1
    }
}

/// Refines `[h, l]` by repeatedly taking the largest subgroup that keeps the
/// quotient degree, splitting it by the kernel on the current quotient graph,
/// and stepping over the smallest subgroup that realises the next degree drop.
pub fn chief_refine_interval(model: &Model, h: usize, l: usize) -> Result<RefinementSegment> {
    let lattice = model.lattice();
    if !lattice.leq(h, l) {
        return Err(Error::IntervalEmpty { lower: h, upper: l });
    }
    let deg = |m: usize| model.quotient_degree(m);
    let start_degree = deg(h);
    let end_degree = deg(l);

    let widest = |from: usize, target: usize| -> Result<usize> {
        lattice
            .extremum_in_interval(from, l, |m| deg(m) == target, Direction::Maximal)?
            .ok_or_else(|| Error::VerificationFailed("degree level is empty".into()))
    };

    let d0 = widest(h, start_degree)?;
    let mut steps = vec![RefinementStep {
        c: h,
        k: kernel_sandwich_over(model, h, d0)?,
        d: d0,
    }];

    loop {
        let d = steps.last().expect("non-empty").d;
        if d == l {
            break;
        }
        let current = deg(d);
        let interval = lattice.interval(d, l)?;
        let next = interval
            .iter()
            .map(|&m| deg(m))
            .filter(|&x| x < current)
            .max()
            .ok_or_else(|| {
                Error::VerificationFailed(format!(
                    "no degree drop above {d} although it is below {l}"
                ))
            })?;
        let c = lattice
            .extremum_in_interval(d, l, |m| m != d && deg(m) == next, Direction::Minimal)?
            .expect("the degree level is non-empty");
        if !is_chief(lattice, d, c) {
            return Err(Error::VerificationFailed(format!(
                "{c}/{d} was expected to be a chief factor"
            )));
        }
        let d_next = widest(c, next)?;
        let k = kernel_sandwich_over(model, c, d_next)?;
        steps.push(RefinementStep { c, k, d: d_next });
    }

    let segment = RefinementSegment {
        steps,
        start_degree,
        end_degree,
    };
    verify_segment(model, &segment)?;
    Ok(segment)
}

/// Re-checks every factor of a refinement segment and the chief-count bound.
pub fn verify_segment(model: &Model, segment: &RefinementSegment) -> Result<()> {
    let lattice = model.lattice();
    for (i, s) in segment.steps.iter().enumerate() {
        if !model.classify_factor(s.c, s.k)?.elliptic {
            return Err(Error::VerificationFailed(format!(
                "step {i}: K/C is not elliptic"
            )));
        }
        if !model.classify_factor(s.k, s.d)?.free {
            return Err(Error::VerificationFailed(format!(
                "step {i}: D/K is not free"
            )));
        }
        if i > 0 && !is_chief(lattice, segment.steps[i - 1].d, s.c) {
            return Err(Error::VerificationFailed(format!(
                "step {i}: C/D is not chief"
            )));
        }
    }
    let allowed = segment.start_degree - segment.end_degree;
    if segment.chief_count() > allowed {
        return Err(Error::VerificationFailed(format!(
            "{} chief factors exceed the degree drop {allowed}",
            segment.chief_count()
        )));
    }
    Ok(())
}

/// An essentially chief series through every anchor, refining each gap
/// between consecutive anchors. Repeated terms are collapsed.
pub fn essentially_chief_series(model: &Model, anchors: &[usize]) -> Result<NormalSeries> {
    let lattice = model.lattice();
    let mut chain = vec![lattice.bottom()];
    chain.extend_from_slice(anchors);
    chain.push(lattice.top());
    for (i, w) in chain.windows(2).enumerate() {
        if w[0] >= lattice.len() || w[1] >= lattice.len() {
            return Err(Error::NotInLattice);
        }
        if !lattice.leq(w[0], w[1]) {
            return Err(Error::AnchorsNotAscending { position: i });
        }
    }
    let mut terms = vec![lattice.bottom()];
    for w in chain.windows(2) {
        terms.extend(chief_refine_interval(model, w[0], w[1])?.terms());
    }
    terms.dedup();
    let series = NormalSeries::new(model, terms)?;
    if let Some(index) = series.first_untagged() {
        return Err(Error::NotEssentiallyChief { index });
    }
    Ok(series)
}

/// Upper bound on the factor count of [`essentially_chief_series`] with the
/// given number of anchors: two per anchor gap plus three per unit of degree.
pub fn series_length_bound(anchor_count: usize, degree: usize) -> usize {
    2 * (anchor_count + 1) + 3 * degree
}

fn block_of(blocks: &[ChiefBlock], f: NormalFactor) -> Option<&ChiefBlock> {
    blocks.iter().find(|b| b.contains(f))
}

/// Indices of factors that are non-abelian chief factors in non-negligible blocks.
pub fn non_negligible_positions(
    series: &NormalSeries,
    blocks: &[ChiefBlock],
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, c) in series.classifications.iter().enumerate() {
        if !c.chief || c.lower == c.upper {
            continue;
        }
        let f = series.factor(i);
        match block_of(blocks, f) {
            Some(b) if !b.negligible => out.push(i),
            Some(_) => {}
            None => {
                // abelian chief factors belong to no block
            }
        }
    }
    Ok(out)
}

/// The bijection between non-negligible chief positions of two essentially
/// chief series, sending each to the unique associated position.
pub fn jordan_holder_match(
    model: &Model,
    a: &NormalSeries,
    b: &NormalSeries,
    blocks: &[ChiefBlock],
) -> Result<BTreeMap<usize, usize>> {
    for s in [a, b] {
        if let Some(index) = s.first_untagged() {
            return Err(Error::NotEssentiallyChief { index });
        }
    }
    let lattice = model.lattice();
    let left = non_negligible_positions(a, blocks)?;
    let right = non_negligible_positions(b, blocks)?;
    let matches =
        |from: &NormalSeries, to: &NormalSeries, i: usize, pool: &[usize]| -> Vec<usize> {
            pool.iter()
                .copied()
                .filter(|&j| is_associated(lattice, from.factor(i), to.factor(j)))
                .collect()
        };
    let mut forward = BTreeMap::new();
    for &i in &left {
        match matches(a, b, i, &right)[..] {
            [j] => {
                forward.insert(i, j);
            }
            [] => return Err(Error::NoMatch { index: i }),
            ref many => {
                return Err(Error::MultipleMatch {
                    index: i,
                    matches: many.to_vec(),
                })
            }
        }
    }
    for &j in &right {
        match matches(b, a, j, &left)[..] {
            [i] if forward.get(&i) == Some(&j) => {}
            [_] => {
                return Err(Error::VerificationFailed(format!(
                    "position {j} of the second series maps back inconsistently"
                )))
            }
            [] => return Err(Error::NoMatch { index: j }),
            ref many => {
                return Err(Error::MultipleMatch {
                    index: j,
                    matches: many.to_vec(),
                })
            }
        }
    }
    Ok(forward)
}

/// The unique position of `terms` whose factor covers the block of `factor`.
pub fn schreier_cover_audit(
    lattice: &NormalLattice,
    terms: &[usize],
    factor: NormalFactor,
) -> Result<usize> {
    if !is_chief(lattice, factor.lower, factor.upper) || is_abelian_factor(lattice, factor) {
        return Err(Error::PreconditionFailed(
            "audit needs a non-abelian chief factor".into(),
        ));
    }
    if terms.first() != Some(&lattice.bottom()) || terms.last() != Some(&lattice.top()) {
        return Err(Error::PreconditionFailed(
            "a normal series must run from the trivial subgroup to the group".into(),
        ));
    }
    for (i, w) in terms.windows(2).enumerate() {
        if !lattice.leq(w[0], w[1]) {
            return Err(Error::AnchorsNotAscending { position: i + 1 });
        }
    }
    let covering: Vec<usize> = terms
        .windows(2)
        .enumerate()
        .filter(|(_, w)| covers_factor(lattice, w[1], w[0], factor))
        .map(|(i, _)| i)
        .collect();
    match covering[..] {
        [i] => Ok(i),
        _ => Err(Error::CoverCountViolation { covering }),
    }
}

/// The intersection `G_a` of all normal subgroups covering a non-negligible
/// block, checked to satisfy `K covers a ⇔ K ≥ G_a` on the whole lattice.
pub fn min_covering_subgroup(lattice: &NormalLattice, block: &ChiefBlock) -> Result<usize> {
    if block.negligible {
        return Err(Error::PreconditionFailed(
            "minimal covering subgroups are defined for non-negligible blocks".into(),
        ));
    }
    if let Some(&g) = block.minimal_cover.get() {
        return Ok(g);
    }
    let bottom = lattice.bottom();
    let covering: Vec<bool> = (0..lattice.len())
        .map(|k| covers(lattice, k, bottom, block))
        .collect();
    let g = (0..lattice.len())
        .filter(|&k| covering[k])
        .fold(lattice.top(), |acc, k| lattice.meet(acc, k));
    if let Some(k) = (0..lattice.len()).find(|&k| covering[k] != lattice.leq(g, k)) {
        return Err(Error::VerificationFailed(format!(
            "member {k} breaks the covering criterion for G_a = {g}"
        )));
    }
    let _ = block.minimal_cover.set(g);
    Ok(g)
}
