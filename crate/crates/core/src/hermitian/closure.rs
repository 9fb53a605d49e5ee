use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

use crate::matrix::StarRing;

use super::{Cone, HermitianError, Membership};

/// How an element of a bounded closure was obtained.
#[derive(Clone, Debug, PartialEq)]
pub enum Step<E> {
    Generator(usize),
    /// `r s r*` for an earlier element `s`.
    Conj { r: E, src: usize },
    Sum(usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Derivation<E> {
    pub value: E,
    pub step: Step<E>,
}

/// Search limits for closures under `+` and `r (.) r*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureBounds {
    pub rounds: usize,
    pub max_elements: usize,
}

impl Default for ClosureBounds {
    fn default() -> Self {
        ClosureBounds {
            rounds: 6,
            max_elements: 4000,
        }
    }
}

/// The part of the cone generated by `gens` reachable within the bounds.
#[derive(Clone)]
pub struct BoundedClosure<R: StarRing>
where
    R::Elem: Hash + Eq,
{
    ring: R,
    gens: Vec<R::Elem>,
    pool: Vec<R::Elem>,
    bounds: ClosureBounds,
    steps: Vec<Derivation<R::Elem>>,
    index: HashMap<R::Elem, usize>,
    rounds_done: usize,
    frontier: usize,
    saturated: bool,
}

impl<R: StarRing> BoundedClosure<R>
where
    R::Elem: Hash + Eq,
{
    pub fn new(ring: &R, gens: &[R::Elem], pool: &[R::Elem], bounds: ClosureBounds) -> Self {
        let mut c = BoundedClosure {
            ring: ring.clone(),
            gens: gens.to_vec(),
            pool: pool.to_vec(),
            bounds,
            steps: Vec::new(),
            index: HashMap::new(),
            rounds_done: 0,
            frontier: 0,
            saturated: false,
        };
        for (i, g) in gens.iter().enumerate() {
            c.insert(g.clone(), Step::Generator(i));
        }
        c
    }

    pub fn gens(&self) -> &[R::Elem] {
        &self.gens
    }

    pub fn bounds(&self) -> ClosureBounds {
        self.bounds
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn rounds_done(&self) -> usize {
        self.rounds_done
    }

    fn full(&self) -> bool {
        self.steps.len() >= self.bounds.max_elements
    }

    fn insert(&mut self, v: R::Elem, step: Step<R::Elem>) -> Option<usize> {
        if self.index.contains_key(&v) || self.full() {
            return None;
        }
        let i = self.steps.len();
        self.index.insert(v.clone(), i);
        self.steps.push(Derivation { value: v, step });
        Some(i)
    }

    /// Runs one more round; false once the bounds are exhausted.
    pub fn grow(&mut self) -> bool {
        if self.rounds_done >= self.bounds.rounds || self.full() || self.saturated {
            return false;
        }
        let r = self.ring.clone();
        let start = self.frontier;
        let end = self.steps.len();
        for s in start..end {
            for p in self.pool.clone() {
                let v = r.mul(&r.mul(&p, &self.steps[s].value), &r.star(&p));
                if !r.is_zero(&v) {
                    self.insert(v, Step::Conj { r: p, src: s });
                }
            }
        }
        let mid = self.steps.len();
        for s in start..mid {
            for t in 0..=s {
                let v = r.add(&self.steps[s].value, &self.steps[t].value);
                if !r.is_zero(&v) {
                    self.insert(v, Step::Sum(t, s));
                }
            }
        }
        self.frontier = end;
        self.saturated = self.steps.len() == end;
        self.rounds_done += 1;
        true
    }

    pub fn position(&self, e: &R::Elem) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Grows until `target` appears or the bounds run out.
    pub fn reach(&mut self, target: &R::Elem) -> Option<usize> {
        loop {
            if let Some(i) = self.position(target) {
                return Some(i);
            }
            if !self.grow() {
                return None;
            }
        }
    }

    fn opposite_pair(&self) -> Option<(usize, usize)> {
        self.steps.iter().enumerate().find_map(|(i, d)| {
            let neg = self.ring.neg(&d.value);
            self.index.get(&neg).map(|&j| (i, j))
        })
    }

    /// Grows until some nonzero `c` and `-c` both appear.
    pub fn find_opposite(&mut self) -> Option<ClosureCertificate<R::Elem>> {
        loop {
            if let Some((i, j)) = self.opposite_pair() {
                return Some(self.certificate(&[i, j]));
            }
            if !self.grow() {
                return None;
            }
        }
    }

    /// Minimal chain of steps deriving the given indices, renumbered.
    pub fn certificate(&self, targets: &[usize]) -> ClosureCertificate<R::Elem> {
        let mut needed = vec![false; self.steps.len()];
        let mut stack: Vec<usize> = targets.to_vec();
        while let Some(i) = stack.pop() {
            if needed[i] {
                continue;
            }
            needed[i] = true;
            match &self.steps[i].step {
                Step::Generator(_) => {}
                Step::Conj { src, .. } => stack.push(*src),
                Step::Sum(a, b) => {
                    stack.push(*a);
                    stack.push(*b);
                }
            }
        }
        let mut renum = vec![usize::MAX; self.steps.len()];
        let mut steps = Vec::new();
        for (i, d) in self.steps.iter().enumerate() {
            if !needed[i] {
                continue;
            }
            renum[i] = steps.len();
            let step = match &d.step {
                Step::Generator(g) => Step::Generator(*g),
                Step::Conj { r, src } => Step::Conj {
                    r: r.clone(),
                    src: renum[*src],
                },
                Step::Sum(a, b) => Step::Sum(renum[*a], renum[*b]),
            };
            steps.push(Derivation {
                value: d.value.clone(),
                step,
            });
        }
        ClosureCertificate {
            gens: self.gens.clone(),
            steps,
            targets: targets.iter().map(|&t| renum[t]).collect(),
        }
    }
}

/// A checkable derivation of elements from generators using `+` and
/// `r (.) r*`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosureCertificate<E> {
    pub gens: Vec<E>,
    pub steps: Vec<Derivation<E>>,
    pub targets: Vec<usize>,
}

impl<E: Clone + PartialEq> ClosureCertificate<E> {
    pub fn target_values(&self) -> Vec<E> {
        self.targets.iter().map(|&t| self.steps[t].value.clone()).collect()
    }

    /// Recomputes every step exactly.
    pub fn verify<R: StarRing<Elem = E>>(&self, ring: &R) -> bool {
        for (i, d) in self.steps.iter().enumerate() {
            let v = match &d.step {
                Step::Generator(g) => match self.gens.get(*g) {
                    Some(v) => v.clone(),
                    None => return false,
                },
                Step::Conj { r, src } if *src < i => {
                    ring.mul(&ring.mul(r, &self.steps[*src].value), &ring.star(r))
                }
                Step::Sum(a, b) if *a < i && *b < i => ring.add(&self.steps[*a].value, &self.steps[*b].value),
                _ => return false,
            };
            if v != d.value {
                return false;
            }
        }
        self.targets.iter().all(|&t| t < self.steps.len())
    }

    /// Verifies and checks that the two targets are `c` and `-c` with
    /// `c != 0`.
    pub fn verify_opposite<R: StarRing<Elem = E>>(&self, ring: &R) -> bool {
        if !self.verify(ring) || self.targets.len() != 2 {
            return false;
        }
        let v = self.target_values();
        !ring.is_zero(&v[0]) && ring.neg(&v[0]) == v[1]
    }
}

/// Membership in a bounded closure: found means member, otherwise unknown.
pub struct SohsClosure<R: StarRing>
where
    R::Elem: Hash + Eq,
{
    closure: std::sync::Mutex<BoundedClosure<R>>,
}

impl<R: StarRing> SohsClosure<R>
where
    R::Elem: Hash + Eq,
{
    pub fn new(ring: &R, gens: &[R::Elem], pool: &[R::Elem], bounds: ClosureBounds) -> Self {
        SohsClosure {
            closure: std::sync::Mutex::new(BoundedClosure::new(ring, gens, pool, bounds)),
        }
    }
}

impl<R: StarRing> Cone<R::Elem> for SohsClosure<R>
where
    R::Elem: Hash + Eq,
{
    fn contains(&self, e: &R::Elem) -> Result<Membership, HermitianError> {
        let mut c = self.closure.lock().expect("closure lock");
        if c.ring.is_zero(e) {
            return Ok(Membership::Member);
        }
        Ok(match c.reach(e) {
            Some(_) => Membership::Member,
            None => Membership::Unknown,
        })
    }

    fn describe(&self) -> String {
        let c = self.closure.lock().expect("closure lock");
        let gens: Vec<String> = c.gens.iter().map(|g| g.to_string()).collect();
        format!(
            "closure of {{{}}} within {} rounds",
            gens.join(", "),
            c.bounds.rounds
        )
    }
}
