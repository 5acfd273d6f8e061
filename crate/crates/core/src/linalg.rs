//! Row reduction over a [`FieldSpec`] on plain coefficient vectors.

use crate::field::FieldSpec;

/// Reduces `rows` to reduced row-echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row, strictly increasing.
pub(crate) fn rref(field: &FieldSpec, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field.inv(rows[r][col]).expect("nonzero pivot");
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let c = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                if y != 0 {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Subtracts the RREF `rows` (with `pivots`) from `v` until every pivot entry vanishes.
pub(crate) fn reduce(field: &FieldSpec, rows: &[Vec<u32>], pivots: &[usize], v: &mut [u32]) {
    for (row, &p) in rows.iter().zip(pivots) {
        let c = v[p];
        if c == 0 {
            continue;
        }
        for (x, &y) in v.iter_mut().zip(row).skip(p) {
            if y != 0 {
                *x = field.sub(*x, field.mul(c, y));
            }
        }
    }
}

/// Basis of `{c : sum_j rows[i][j] c[j] = 0 for all i}`.
pub(crate) fn kernel(field: &FieldSpec, rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let pivots = rref(field, &mut m);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![0u32; ncols];
            v[f] = 1;
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = field.neg(row[f]);
            }
            v
        })
        .collect()
}

/// Finds the first linear dependency in a stream of vectors.
pub(crate) struct DependencyFinder {
    field: FieldSpec,
    rows: Vec<(Vec<u32>, usize, Vec<u32>)>,
    count: usize,
}

impl DependencyFinder {
    pub(crate) fn new(field: FieldSpec) -> Self {
        DependencyFinder { field, rows: Vec::new(), count: 0 }
    }

    /// Adds `v_k`. On dependency returns `c` of length `k+1` with `c[k] = 1`
    /// and `sum_j c[j] v_j = 0`.
    pub(crate) fn push(&mut self, mut v: Vec<u32>) -> Option<Vec<u32>> {
        let f = &self.field;
        let k = self.count;
        self.count += 1;
        let mut combo = vec![0u32; k + 1];
        combo[k] = 1;
        for (row, p, rc) in &self.rows {
            let c = v[*p];
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(c, y));
            }
            for (x, &y) in combo.iter_mut().zip(rc) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => Some(combo),
            Some(p) => {
                let inv = f.inv(v[p]).expect("nonzero");
                v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                combo.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                self.rows.push((v, p, combo));
                None
            }
        }
    }
}
