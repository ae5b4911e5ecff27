use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::report::DEFAULT_TOLERANCE;
use crate::weightcalc::{decompose, weyl_dimension, DecompositionTable, DominantWeight, HalfInt};

use super::split::{split_components, SplitResult};
use super::tensor::tensor_with_vector_limited;
use super::validate::validate_rep_strict;
use super::{standard_rep, DiskCache, Representation, StandardKind, TensorRep, MAX_TENSOR_DIM};

type Memory = Mutex<HashMap<DominantWeight, Arc<Representation>>>;

fn memory() -> &'static Memory {
    static MEMORY: OnceLock<Memory> = OnceLock::new();
    MEMORY.get_or_init(|| Mutex::new(HashMap::new()))
}

/// A representation already built in this process, if any.
pub fn cached_rep(weight: &DominantWeight) -> Option<Arc<Representation>> {
    memory().lock().expect("representation cache").get(weight).cloned()
}

/// Drops every representation held in memory.
pub fn clear_memory_cache() {
    memory().lock().expect("representation cache").clear();
}

fn remember(rep: Representation) -> Arc<Representation> {
    let mut mem = memory().lock().expect("representation cache");
    Arc::clone(mem.entry(rep.weight().clone()).or_insert_with(|| Arc::new(rep)))
}

fn cached_in_box(n: usize, integral: bool, bound: HalfInt) -> Vec<DominantWeight> {
    memory()
        .lock()
        .expect("representation cache")
        .keys()
        .filter(|w| w.n() == n && w.is_integral() == integral && w.coords()[0] <= bound)
        .cloned()
        .collect()
}

/// Builds representations as components of iterated tensor products with `Rⁿ`,
/// starting from the trivial or a spinor representation.
#[derive(Clone, Debug)]
pub struct RepBuilder {
    max_tensor_dim: usize,
    disk: Option<DiskCache>,
    tolerance: f64,
}

impl Default for RepBuilder {
    fn default() -> Self {
        RepBuilder { max_tensor_dim: MAX_TENSOR_DIM, disk: None, tolerance: DEFAULT_TOLERANCE }
    }
}

impl RepBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_disk(mut self, disk: DiskCache) -> Self {
        self.disk = Some(disk);
        self
    }

    pub fn with_max_tensor_dim(mut self, max_tensor_dim: usize) -> Self {
        self.max_tensor_dim = max_tensor_dim;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn max_tensor_dim(&self) -> usize {
        self.max_tensor_dim
    }

    fn roots(&self, n: usize, integral: bool) -> Result<Vec<Arc<Representation>>> {
        let kinds: &[StandardKind] = match (integral, n % 2) {
            (true, _) => &[StandardKind::Trivial],
            (false, 1) => &[StandardKind::Spinor],
            (false, _) => &[StandardKind::SpinorPlus, StandardKind::SpinorMinus],
        };
        kinds
            .iter()
            .map(|&k| {
                let rep = standard_rep(n, k)?;
                Ok(cached_rep(rep.weight()).unwrap_or_else(|| remember(rep)))
            })
            .collect()
    }

    /// Cheapest chain of weights from an available representation to `target`,
    /// costing each tensor step by `(dim·n)³`.
    pub fn plan(&self, target: &DominantWeight) -> Result<Vec<DominantWeight>> {
        let n = target.n();
        let integral = target.is_integral();
        let bound = target.coords()[0].max(HalfInt::HALF);
        let mut starts: Vec<DominantWeight> = self.roots(n, integral)?.iter().map(|r| r.weight().clone()).collect();
        starts.extend(cached_in_box(n, integral, bound));

        let mut dist: HashMap<DominantWeight, u128> = HashMap::new();
        let mut prev: HashMap<DominantWeight, DominantWeight> = HashMap::new();
        let mut heap = BinaryHeap::new();
        for s in starts {
            dist.insert(s.clone(), 0);
            heap.push(Reverse((0u128, s)));
        }
        while let Some(Reverse((cost, node))) = heap.pop() {
            if dist.get(&node).is_some_and(|&d| d < cost) {
                continue;
            }
            if &node == target {
                let mut path = vec![node];
                while let Some(p) = prev.get(path.last().expect("nonempty")) {
                    path.push(p.clone());
                }
                path.reverse();
                return Ok(path);
            }
            let width = weyl_dimension(&node) as usize * n;
            if width > self.max_tensor_dim {
                continue;
            }
            let step = (width as u128).pow(3);
            for c in decompose(&node).components {
                if c.weight.coords()[0] > bound {
                    continue;
                }
                let next = cost + step;
                if dist.get(&c.weight).is_none_or(|&d| next < d) {
                    dist.insert(c.weight.clone(), next);
                    prev.insert(c.weight.clone(), node.clone());
                    heap.push(Reverse((next, c.weight)));
                }
            }
        }
        Err(Error::Capacity(format!(
            "{target} is not reachable with dim·n <= {}",
            self.max_tensor_dim
        )))
    }

    /// Builds (or fetches) the representation with highest weight `weight`
    /// and validates it.
    pub fn build(&self, weight: &DominantWeight) -> Result<Arc<Representation>> {
        if let Some(hit) = cached_rep(weight) {
            return Ok(hit);
        }
        if let Some(disk) = &self.disk {
            if let Some(rep) = disk.load(weight)? {
                return Ok(remember(rep));
            }
        }
        let path = self.plan(weight)?;
        let bound = weight.coords()[0].max(HalfInt::HALF);
        for step in path.windows(2) {
            if cached_rep(&step[1]).is_some() {
                continue;
            }
            self.expand_with(&step[0], bound, Some(&step[1]))?;
        }
        let rep = cached_rep(weight).ok_or_else(|| Error::Integrity(format!("chain did not produce {weight}")))?;
        validate_rep_strict(&rep, self.tolerance)?;
        if let Some(disk) = &self.disk {
            disk.store(&rep)?;
        }
        Ok(rep)
    }

    /// Tensors `V_weight` with `Rⁿ`, splits it, and caches the components
    /// whose first coordinate is at most `bound` and that fit the size limit.
    pub fn expand(&self, weight: &DominantWeight, bound: HalfInt) -> Result<(TensorRep, DecompositionTable, SplitResult)> {
        self.expand_with(weight, bound, None)
    }

    fn expand_with(
        &self,
        weight: &DominantWeight,
        bound: HalfInt,
        keep: Option<&DominantWeight>,
    ) -> Result<(TensorRep, DecompositionTable, SplitResult)> {
        let rep = match cached_rep(weight) {
            Some(r) => r,
            None => self.build(weight)?,
        };
        let trep = tensor_with_vector_limited(rep, self.max_tensor_dim)?;
        let table = decompose(weight);
        let split = split_components(&trep, &table)?;
        let n = weight.n();
        for emb in &split.embeddings {
            let w = &emb.descriptor.weight;
            let wanted = keep == Some(w)
                || (w.coords()[0] <= bound && emb.dim() * n <= self.max_tensor_dim);
            if wanted && cached_rep(w).is_none() {
                remember(emb.subrepresentation(&trep));
            }
        }
        Ok((trep, table, split))
    }
}

/// Builds `V_weight` with the default limits, caching it in memory.
pub fn build_rep(weight: &DominantWeight) -> Result<Arc<Representation>> {
    RepBuilder::default().build(weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::repforge::group_element;
    use crate::weightcalc::{casimir_constant, rational_to_f64};

    fn w(n: usize, s: &str) -> DominantWeight {
        DominantWeight::parse(n, s).unwrap()
    }

    #[test]
    fn one_step_from_spinor() {
        let rep = build_rep(&w(5, "3/2,1/2")).unwrap();
        assert_eq!(rep.dim(), 16);
        let path = RepBuilder::default().plan(&w(5, "3/2,1/2")).unwrap();
        assert_eq!(path.last().unwrap(), &w(5, "3/2,1/2"));
    }

    /// Characters on a one-parameter subgroup agree with the matrix model.
    #[test]
    fn vector_matches_standard_model() {
        let built = build_rep(&w(5, "1,0")).unwrap();
        let standard = standard_rep(5, StandardKind::Vector).unwrap();
        let cb = rational_to_f64(&casimir_constant(built.weight()));
        assert!((built.casimir().trace().re / 5.0 - cb).abs() < 1e-10);
        for t in [0.2, 0.9, 1.7] {
            for (k, l) in [(0, 1), (2, 4)] {
                let a = group_element(&built, k, l, t).unwrap().trace();
                let b = group_element(&standard, k, l, t).unwrap().trace();
                assert!((a - b).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn two_forms_six() {
        let rep = build_rep(&w(6, "1,1,0")).unwrap();
        assert_eq!(rep.dim(), 15);
        let c = rational_to_f64(&casimir_constant(rep.weight()));
        assert_eq!(c, -4.0);
        assert!(rep.casimir().distance(&ComplexMatrix::scalar(15, crate::linalg::c64::new(c, 0.0))) < 1e-9);
    }

    #[test]
    fn exceptional_children_are_built() {
        let rep = build_rep(&w(6, "1,1,-1")).unwrap();
        assert_eq!(rep.dim(), 10);
        let other = build_rep(&w(6, "1,1,1")).unwrap();
        assert_eq!(other.dim(), 10);
    }

    #[test]
    fn capacity_error() {
        let b = RepBuilder::default().with_max_tensor_dim(20);
        assert!(matches!(b.plan(&w(5, "2,2")), Err(Error::Capacity(_))));
    }
}
