//! Dense cell grids over per-axis rational cut lists.
//!
//! Cells are the products of consecutive half-open cut intervals, stored
//! row-major with the last axis varying fastest.

use alloc::vec;
use alloc::vec::Vec;

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Grid<T> {
    pub cuts: Vec<Vec<Rational>>,
    pub values: Vec<T>,
}

pub(crate) fn merge_cuts(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = a.iter().chain(b.iter()).cloned().collect();
    out.sort();
    out.dedup();
    out
}

impl<T: Clone + PartialEq> Grid<T> {
    pub fn dim(&self) -> usize {
        self.cuts.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.cuts
            .iter()
            .map(|c| c.len().saturating_sub(1))
            .collect()
    }

    fn strides(shape: &[usize]) -> Vec<usize> {
        let mut strides = vec![1; shape.len()];
        for axis in (0..shape.len().saturating_sub(1)).rev() {
            strides[axis] = strides[axis + 1] * shape[axis + 1];
        }
        strides
    }

    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let shape = self.shape();
        let mut idx = vec![0; shape.len()];
        for axis in (0..shape.len()).rev() {
            idx[axis] = flat % shape[axis];
            flat /= shape[axis];
        }
        idx
    }

    /// Index `i` with `cuts[i] <= x < cuts[i + 1]`.
    pub fn locate(&self, axis: usize, x: &Rational) -> Option<usize> {
        let cuts = &self.cuts[axis];
        if cuts.len() < 2 || x < &cuts[0] || x >= &cuts[cuts.len() - 1] {
            return None;
        }
        // first cut strictly greater than x, minus one
        let pos = cuts.partition_point(|c| c <= x);
        Some(pos - 1)
    }

    pub fn value_at(&self, point: &[Rational]) -> Option<&T> {
        let shape = self.shape();
        let strides = Self::strides(&shape);
        let mut flat = 0;
        for (axis, x) in point.iter().enumerate() {
            flat += self.locate(axis, x)? * strides[axis];
        }
        self.values.get(flat)
    }

    /// Re-expresses the grid on a finer set of cuts. Cells outside the
    /// original extent take `outside`.
    pub fn refine(&self, cuts: &[Vec<Rational>], outside: T) -> Grid<T> {
        let shape: Vec<usize> = cuts.iter().map(|c| c.len().saturating_sub(1)).collect();
        let total: usize = if shape.is_empty() {
            0
        } else {
            shape.iter().product()
        };
        let mut values = Vec::with_capacity(total);
        let mut idx = vec![0usize; shape.len()];
        for _ in 0..total {
            let corner: Vec<Rational> = idx
                .iter()
                .enumerate()
                .map(|(axis, &i)| cuts[axis][i].clone())
                .collect();
            values.push(
                self.value_at(&corner)
                    .cloned()
                    .unwrap_or_else(|| outside.clone()),
            );
            for axis in (0..shape.len()).rev() {
                idx[axis] += 1;
                if idx[axis] < shape[axis] {
                    break;
                }
                idx[axis] = 0;
            }
        }
        Grid {
            cuts: cuts.to_vec(),
            values,
        }
    }

    fn slab_equal(&self, axis: usize, a: usize, b: usize) -> bool {
        let shape = self.shape();
        let strides = Self::strides(&shape);
        (0..self.values.len())
            .filter(|&flat| (flat / strides[axis]) % shape[axis] == a)
            .all(|flat| self.values[flat] == self.values[flat + (b - a) * strides[axis]])
    }

    fn slab_all(&self, axis: usize, slab: usize, pred: &impl Fn(&T) -> bool) -> bool {
        let shape = self.shape();
        let strides = Self::strides(&shape);
        (0..self.values.len())
            .filter(|&flat| (flat / strides[axis]) % shape[axis] == slab)
            .all(|flat| pred(&self.values[flat]))
    }

    /// Drops cut `cut` on `axis`, keeping the slab on its left; only valid
    /// when both neighbouring slabs agree (or for boundary trimming).
    fn drop_slab(&mut self, axis: usize, slab: usize, cut: usize) {
        let shape = self.shape();
        let strides = Self::strides(&shape);
        let values: Vec<T> = (0..self.values.len())
            .filter(|&flat| (flat / strides[axis]) % shape[axis] != slab)
            .map(|flat| self.values[flat].clone())
            .collect();
        self.values = values;
        self.cuts[axis].remove(cut);
    }

    /// Removes every interior cut across which the function does not change.
    /// The result depends only on the function, not on the input cuts.
    pub fn minimize(&mut self) {
        for axis in 0..self.dim() {
            let mut j = self.cuts[axis].len().saturating_sub(2);
            while j >= 1 {
                if self.slab_equal(axis, j - 1, j) {
                    self.drop_slab(axis, j, j);
                }
                j -= 1;
            }
        }
    }

    /// Strips boundary slabs on which `is_empty` holds everywhere.
    pub fn trim(&mut self, is_empty: impl Fn(&T) -> bool) {
        for axis in 0..self.dim() {
            while self.cuts[axis].len() >= 2 && self.slab_all(axis, 0, &is_empty) {
                let last_slab = self.cuts[axis].len() == 2;
                self.drop_slab(axis, 0, 0);
                if last_slab {
                    self.cuts[axis].clear();
                    self.values.clear();
                }
            }
            while self.cuts[axis].len() >= 2 {
                let n = self.cuts[axis].len() - 2;
                if !self.slab_all(axis, n, &is_empty) {
                    break;
                }
                self.drop_slab(axis, n, n + 1);
            }
        }
        if self.cuts.iter().any(|c| c.len() < 2) {
            for c in &mut self.cuts {
                c.clear();
            }
            self.values.clear();
        }
    }
}

impl Grid<bool> {
    /// Greedy axis-ordered merge of the true cells into index-space boxes.
    /// Deterministic for a given grid.
    pub fn merged_boxes(&self) -> Vec<Vec<(usize, usize)>> {
        let d = self.dim();
        let mut boxes: Vec<Vec<(usize, usize)>> = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v)
            .map(|(flat, _)| {
                self.unflatten(flat)
                    .into_iter()
                    .map(|i| (i, i + 1))
                    .collect()
            })
            .collect();
        for axis in (0..d).rev() {
            boxes.sort_by(|a, b| {
                let key_a: Vec<_> = a
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != axis)
                    .map(|(_, r)| *r)
                    .collect();
                let key_b: Vec<_> = b
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != axis)
                    .map(|(_, r)| *r)
                    .collect();
                key_a.cmp(&key_b).then(a[axis].cmp(&b[axis]))
            });
            let mut merged: Vec<Vec<(usize, usize)>> = Vec::with_capacity(boxes.len());
            for b in boxes {
                if let Some(last) = merged.last_mut() {
                    let same_rest = (0..d).filter(|&k| k != axis).all(|k| last[k] == b[k]);
                    if same_rest && last[axis].1 == b[axis].0 {
                        last[axis].1 = b[axis].1;
                        continue;
                    }
                }
                merged.push(b);
            }
            boxes = merged;
        }
        boxes.sort();
        boxes
    }
}
