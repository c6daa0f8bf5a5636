//! Explicit finite permutation groups: closure, derived series, solvability.
//!
//! Degrees in this crate stay small (at most 8 punctures in practice), so
//! groups are stored as their full element sets.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::braid::Permutation;
use crate::error::{Error, Result};

/// Default cap on the number of elements a closure may produce (8!).
pub const DEFAULT_CLOSURE_BOUND: usize = 40_320;

#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    elements: BTreeSet<Permutation>,
    generators: Vec<Permutation>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            elements: BTreeSet::from([Permutation::identity(degree)]),
            generators: Vec::new(),
        }
    }

    /// Breadth-first closure of `gens` under right multiplication by the
    /// generators. Fails once more than `bound` elements are found.
    pub fn generate(degree: usize, gens: &[Permutation], bound: usize) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidConfig("closure bound must be at least 1".into()));
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let generators: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let identity = Permutation::identity(degree);
        let mut elements = BTreeSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.then(g);
                if !elements.contains(&y) {
                    if elements.len() >= bound {
                        return Err(Error::ClosureBoundExceeded(bound));
                    }
                    elements.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(Self { degree, elements, generators })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = &Permutation> {
        self.elements.iter()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }

    /// Whether every element of `self` is mapped into `self` by conjugation
    /// with every element of `by`.
    pub fn is_normalized_by(&self, by: &PermGroup) -> bool {
        by.elements
            .iter()
            .all(|g| self.elements.iter().all(|x| self.contains(&x.conjugate_by(g))))
    }

    /// The commutator subgroup, built as the normal closure of the
    /// commutators of generator pairs.
    pub fn commutator_subgroup(&self) -> PermGroup {
        let mut seeds: Vec<Permutation> = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(seeds)
    }

    /// Smallest subgroup containing `seeds` and normalized by `self`.
    fn normal_closure(&self, seeds: Vec<Permutation>) -> PermGroup {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = PermGroup::trivial(self.degree);
        let mut pending: VecDeque<Permutation> = seeds.into();
        while let Some(x) = pending.pop_front() {
            if current.contains(&x) {
                continue;
            }
            gens.push(x);
            current = PermGroup::generate(self.degree, &gens, usize::MAX)
                .expect("subgroup of an explicit group is bounded");
            for g in &gens {
                for h in &self.generators {
                    let conj = g.conjugate_by(h);
                    if !current.contains(&conj) {
                        pending.push_back(conj);
                    }
                }
            }
        }
        current
    }

    pub fn derived_series(&self) -> DerivedSeries {
        let mut groups = vec![self.clone()];
        loop {
            let last = groups.last().expect("series is never empty");
            if last.is_trivial() {
                return DerivedSeries { groups, terminated: true };
            }
            let next = last.commutator_subgroup();
            if next.order() == last.order() {
                return DerivedSeries { groups, terminated: false };
            }
            groups.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().terminated
    }

    pub fn derived_length(&self) -> DerivedLength {
        self.derived_series().derived_length()
    }

    /// Orbits of the natural action on `1..=degree`, each sorted, ordered by
    /// smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.degree).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in &self.generators {
            for i in 0..self.degree {
                let (a, b) = (find(&mut parent, i), find(&mut parent, g.image0(i)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut root_slot = vec![usize::MAX; self.degree];
        for i in 0..self.degree {
            let r = find(&mut parent, i);
            if root_slot[r] == usize::MAX {
                root_slot[r] = orbits.len();
                orbits.push(Vec::new());
            }
            orbits[root_slot[r]].push(i + 1);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }
}

// Groups are equal when their element sets are; generating sets may differ.
impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

#[derive(Debug, Clone)]
pub struct DerivedSeries {
    pub groups: Vec<PermGroup>,
    /// True when the series reached the trivial group.
    pub terminated: bool,
}

impl DerivedSeries {
    pub fn orders(&self) -> Vec<usize> {
        self.groups.iter().map(PermGroup::order).collect()
    }

    pub fn derived_length(&self) -> DerivedLength {
        if self.terminated {
            DerivedLength::Solvable(self.groups.len() - 1)
        } else {
            DerivedLength::Unsolvable
        }
    }
}

/// Derived length, or the marker for a group whose derived series stalls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DerivedLength {
    Solvable(usize),
    Unsolvable,
}

impl DerivedLength {
    pub fn value(self) -> Option<usize> {
        match self {
            DerivedLength::Solvable(n) => Some(n),
            DerivedLength::Unsolvable => None,
        }
    }
}

impl fmt::Display for DerivedLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivedLength::Solvable(n) => write!(f, "{n}"),
            DerivedLength::Unsolvable => f.write_str("UNSOLVABLE"),
        }
    }
}

impl Serialize for DerivedLength {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DerivedLength::Solvable(n) => s.serialize_u64(*n as u64),
            DerivedLength::Unsolvable => s.serialize_str("UNSOLVABLE"),
        }
    }
}
