//! Concrete finite permutation groups.
//!
//! A [`FiniteGroup`] is enumerated exhaustively at construction. Elements are
//! addressed by their index in the lexicographically sorted element list, so
//! the identity is always element `0`. Subgroups are membership bitsets over
//! those indices and carry a generating set that every closure computation
//! relies on.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Largest group the enumerator will build unless told otherwise. Covers
/// S5 x S5 (14 400 elements).
pub const DEFAULT_ORDER_BOUND: usize = 20_000;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

/// A bijection of `{0, .., n-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {x} out of range for degree {n}"
                )));
            }
            if seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "image {x} appears twice; not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles. Points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                let p = p as usize;
                if p >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} out of range for degree {degree}"
                    )));
                }
                if used[p] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} appears in more than one cycle position"
                    )));
                }
                used[p] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(0 1)(2 3 4)`; `()` is the identity.
    /// Points inside a cycle may be separated by spaces or commas.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(after_open) = rest.strip_prefix('(') else {
                return Err(Error::InvalidPermutation(format!(
                    "expected '(' in cycle notation {text:?}"
                )));
            };
            let Some(close) = after_open.find(')') else {
                return Err(Error::InvalidPermutation(format!(
                    "unclosed cycle in {text:?}"
                )));
            };
            let body = &after_open[..close];
            if body.contains('(') {
                return Err(Error::InvalidPermutation(format!(
                    "nested '(' in cycle notation {text:?}"
                )));
            }
            let mut cycle = Vec::new();
            for token in body.split(|c: char| c.is_whitespace() || c == ',') {
                if token.is_empty() {
                    continue;
                }
                let p: u32 = token.parse().map_err(|_| {
                    Error::InvalidPermutation(format!("bad point {token:?} in {text:?}"))
                })?;
                cycle.push(p);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = after_open[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Breadth-first closure of `generators` under composition, sorted
/// lexicographically by image array.
pub fn enumerate_elements(
    degree: usize,
    generators: &[Permutation],
    bound: usize,
) -> Result<Vec<Permutation>> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(identity.clone());
    let mut queue = VecDeque::from([identity]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for s in generators {
            let y = x.compose(s);
            if !seen.contains(&y) {
                if seen.len() >= bound {
                    return Err(Error::OrderBoundExceeded { bound });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    out.sort();
    Ok(out)
}

/// A finite permutation group with its full element list.
pub struct FiniteGroup {
    id: u64,
    degree: usize,
    generators: Vec<Permutation>,
    generator_indices: Vec<usize>,
    elements: Vec<Permutation>,
    index: HashMap<Vec<u32>, u32>,
    inverses: Vec<u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl FiniteGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_bound(degree, generators, DEFAULT_ORDER_BOUND)
    }

    pub fn with_bound(degree: usize, generators: Vec<Permutation>, bound: usize) -> Result<Self> {
        let elements = enumerate_elements(degree, &generators, bound)?;
        let index: HashMap<Vec<u32>, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.images.clone(), i as u32))
            .collect();
        let inverses = elements
            .iter()
            .map(|p| index[p.inverse().images()])
            .collect();
        let generator_indices = generators
            .iter()
            .map(|g| index[g.images()] as usize)
            .collect();
        Ok(FiniteGroup {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            degree,
            generators,
            generator_indices,
            elements,
            index,
            inverses,
        })
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]])?);
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(0..n as u32).collect()])?);
        }
        FiniteGroup::new(n, gens)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        let gens = if n >= 2 {
            vec![Permutation::from_cycles(n, &[(0..n as u32).collect()])?]
        } else {
            vec![]
        };
        FiniteGroup::new(n.max(1), gens)
    }

    /// Direct product acting on the disjoint union of both point sets.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let n = a.degree + b.degree;
        let mut gens = Vec::new();
        for g in &a.generators {
            let mut images = g.images.clone();
            images.extend(a.degree as u32..n as u32);
            gens.push(Permutation { images });
        }
        for g in &b.generators {
            let mut images: Vec<u32> = (0..a.degree as u32).collect();
            images.extend(g.images.iter().map(|&x| x + a.degree as u32));
            gens.push(Permutation { images });
        }
        let bound = (a.order() * b.order()).max(DEFAULT_ORDER_BOUND);
        FiniteGroup::with_bound(n, gens, bound)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p.images()).map(|&i| i as usize)
    }

    pub fn require(&self, p: &Permutation) -> Result<usize> {
        self.index_of(p)
            .ok_or_else(|| Error::NotAnElement(p.to_string()))
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let pa = &self.elements[a].images;
        let pb = &self.elements[b].images;
        let mut buf = [0u32; 32];
        if pb.len() <= buf.len() {
            let buf = &mut buf[..pb.len()];
            for (slot, &x) in buf.iter_mut().zip(pb) {
                *slot = pa[x as usize];
            }
            self.index[&buf[..]] as usize
        } else {
            let v: Vec<u32> = pb.iter().map(|&x| pa[x as usize]).collect();
            self.index[&v] as usize
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `g h g⁻¹`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    fn check(&self, h: &Subgroup) -> Result<()> {
        if h.group_id != self.id {
            Err(Error::SubgroupMismatch)
        } else {
            Ok(())
        }
    }

    fn extend_closure(&self, members: &mut FixedBitSet, list: &mut Vec<usize>, gens: &[usize]) {
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !members.contains(y) {
                    members.insert(y);
                    list.push(y);
                }
            }
        }
    }

    fn make_subgroup(&self, members: FixedBitSet, generators: Vec<usize>) -> Subgroup {
        let order = members.count_ones(..);
        Subgroup {
            group_id: self.id,
            members,
            order,
            generators,
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert(0);
        self.make_subgroup(members, vec![])
    }

    pub fn whole(&self) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert_range(..);
        self.make_subgroup(members, self.generator_indices.clone())
    }

    /// The subgroup generated by the given element indices.
    pub fn subgroup(&self, generators: &[usize]) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert(0);
        let mut list = vec![0];
        let mut gens = Vec::new();
        for &g in generators {
            if members.contains(g) {
                continue;
            }
            gens.push(g);
            self.extend_closure(&mut members, &mut list, &gens);
        }
        self.make_subgroup(members, gens)
    }

    pub fn subgroup_from_perms(&self, generators: &[Permutation]) -> Result<Subgroup> {
        let idx = generators
            .iter()
            .map(|p| self.require(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup(&idx))
    }

    /// Wraps an explicit element set, checking it is a subgroup and picking a
    /// greedy generating set in index order.
    pub fn subgroup_from_members(&self, members: FixedBitSet) -> Result<Subgroup> {
        if !members.contains(0) {
            return Err(Error::VerificationFailed(
                "element set does not contain the identity".into(),
            ));
        }
        let span = self.subgroup(&members.ones().collect::<Vec<_>>());
        if span.members != members {
            return Err(Error::VerificationFailed(
                "element set is not closed under products".into(),
            ));
        }
        Ok(span)
    }

    fn closure_under_conjugation(&self, conjugators: &[usize], seeds: &[usize]) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert(0);
        let mut list = vec![0];
        let mut gens = Vec::new();
        let mut queue: VecDeque<usize> = seeds.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            if members.contains(x) {
                continue;
            }
            gens.push(x);
            self.extend_closure(&mut members, &mut list, &gens);
            for &g in conjugators {
                let c = self.conj(g, x);
                if !members.contains(c) {
                    queue.push_back(c);
                }
            }
        }
        self.make_subgroup(members, gens)
    }

    /// Smallest normal subgroup containing the given elements.
    pub fn normal_closure(&self, elements: &[usize]) -> Subgroup {
        self.closure_under_conjugation(&self.generator_indices, elements)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        h.group_id == self.id
            && self.generator_indices.iter().all(|&g| {
                h.generators
                    .iter()
                    .all(|&x| h.members.contains(self.conj(g, x)))
            })
    }

    /// Conjugacy classes ordered by (size, smallest member); each class sorted.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = FixedBitSet::with_capacity(self.order());
        let mut classes = Vec::new();
        for start in 0..self.order() {
            if assigned.contains(start) {
                continue;
            }
            assigned.insert(start);
            let mut class = vec![start];
            let mut head = 0;
            while head < class.len() {
                let x = class[head];
                head += 1;
                for &g in &self.generator_indices {
                    let y = self.conj(g, x);
                    if !assigned.contains(y) {
                        assigned.insert(y);
                        class.push(y);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes.sort_by_key(|c| (c.len(), c[0]));
        classes
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.check(a)?;
        self.check(b)?;
        if a.is_subgroup_of(b) {
            return Ok(a.clone());
        }
        if b.is_subgroup_of(a) {
            return Ok(b.clone());
        }
        let mut members = a.members.clone();
        members.intersect_with(&b.members);
        let gens: Vec<usize> = members.ones().collect();
        Ok(self.subgroup(&gens))
    }

    /// The subgroup generated by `a ∪ b`.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.check(a)?;
        self.check(b)?;
        if a.is_subgroup_of(b) {
            return Ok(b.clone());
        }
        if b.is_subgroup_of(a) {
            return Ok(a.clone());
        }
        let mut members = a.members.clone();
        let mut list: Vec<usize> = members.ones().collect();
        let mut gens = a.generators.clone();
        for &g in &b.generators {
            if members.contains(g) {
                continue;
            }
            gens.push(g);
            self.extend_closure(&mut members, &mut list, &gens);
        }
        Ok(self.make_subgroup(members, gens))
    }

    pub fn centralizer(&self, k: &Subgroup) -> Result<Subgroup> {
        self.check(k)?;
        let gens: Vec<usize> = (0..self.order())
            .filter(|&g| {
                k.generators
                    .iter()
                    .all(|&x| self.mul(g, x) == self.mul(x, g))
            })
            .collect();
        Ok(self.subgroup(&gens))
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole())
            .expect("whole group belongs to itself")
    }

    /// `[K, K]`, the normal closure inside `K` of commutators of its generators.
    pub fn commutator_subgroup(&self, k: &Subgroup) -> Result<Subgroup> {
        self.check(k)?;
        let mut seeds = Vec::new();
        for (i, &a) in k.generators.iter().enumerate() {
            for &b in &k.generators[i + 1..] {
                seeds.push(self.commutator(a, b));
            }
        }
        Ok(self.closure_under_conjugation(&k.generators, &seeds))
    }

    /// Whether `K/L` is abelian, i.e. `[K, K] ≤ L`. `L` must be normal in `K`.
    pub fn is_abelian_factor(&self, k: &Subgroup, l: &Subgroup) -> Result<bool> {
        self.check(k)?;
        self.check(l)?;
        if !l.is_subgroup_of(k) {
            return Err(Error::PreconditionFailed(
                "is_abelian_factor needs L ≤ K".into(),
            ));
        }
        let gens = &k.generators;
        Ok(gens.iter().enumerate().all(|(i, &a)| {
            gens[i + 1..]
                .iter()
                .all(|&b| l.contains(self.commutator(a, b)))
        }))
    }

    /// Coset table of `G/N`.
    pub fn quotient(self: &Arc<Self>, n: &Subgroup) -> Result<QuotientGroup> {
        self.check(n)?;
        if !self.is_normal(n) {
            return Err(Error::NotNormal(format!(
                "subgroup of order {} is not normal in a group of order {}",
                n.order(),
                self.order()
            )));
        }
        let mut coset_of = vec![u32::MAX; self.order()];
        let mut reps = Vec::new();
        let kernel: Vec<usize> = n.elements().collect();
        for g in 0..self.order() {
            if coset_of[g] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(g);
            for &x in &kernel {
                coset_of[self.mul(g, x)] = c;
            }
        }
        Ok(QuotientGroup {
            group: Arc::clone(self),
            kernel: n.clone(),
            coset_of,
            reps,
            table: OnceLock::new(),
        })
    }
}

/// A subgroup of a [`FiniteGroup`], stored as a membership bitset.
#[derive(Clone)]
pub struct Subgroup {
    group_id: u64,
    members: FixedBitSet,
    order: usize,
    generators: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group_id == other.group_id && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.group_id.hash(state);
        self.members.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

impl Subgroup {
    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.contains(element)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    /// Element indices in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group_id == other.group_id && self.members.is_subset(&other.members)
    }

    /// Lexicographic comparison of the sorted element index lists.
    pub fn cmp_elements(&self, other: &Subgroup) -> std::cmp::Ordering {
        self.members.ones().cmp(other.members.ones())
    }
}

/// `G/N` as a coset table. Cosets are numbered by their lexicographically
/// smallest element, so coset `0` is `N` itself.
pub struct QuotientGroup {
    group: Arc<FiniteGroup>,
    kernel: Subgroup,
    coset_of: Vec<u32>,
    reps: Vec<usize>,
    table: OnceLock<Vec<u32>>,
}

impl fmt::Debug for QuotientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuotientGroup")
            .field("order", &self.order())
            .field("kernel_order", &self.kernel.order())
            .finish()
    }
}

impl QuotientGroup {
    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Canonical (lexicographically smallest) representative of a coset.
    pub fn representative(&self, coset: usize) -> usize {
        self.reps[coset]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn coset_of(&self, element: usize) -> usize {
        self.coset_of[element] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if let Some(t) = self.table.get() {
            return t[a * self.order() + b] as usize;
        }
        self.coset_of(self.group.mul(self.reps[a], self.reps[b]))
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.coset_of(self.group.inv(self.reps[a]))
    }

    /// Images of the parent's generators, duplicates and identity removed.
    pub fn generators(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .group
            .generator_indices()
            .iter()
            .map(|&g| self.coset_of(g))
            .filter(|&c| c != 0)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().enumerate().all(|(i, &a)| {
            gens[i + 1..]
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    /// Order of a coset as a group element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Row-major multiplication table, materialised on first use.
    pub fn product_table(&self) -> &[u32] {
        self.table.get_or_init(|| {
            let n = self.order();
            let mut t = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    t.push(self.coset_of(self.group.mul(self.reps[a], self.reps[b])) as u32);
                }
            }
            t
        })
    }
}
