//! Small dense complex linear algebra on top of `nalgebra`.

use nalgebra::{DMatrix, DVector};

use crate::{Error, Result, C64};

pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Solves the square system `a x = b`.
pub fn solve(a: &CMat, b: &CMat) -> Result<CMat> {
    if a.nrows() != a.ncols() {
        return Err(Error::numeric("solve needs a square matrix"));
    }
    a.clone()
        .lu()
        .solve(b)
        .ok_or_else(|| Error::numeric("singular linear system"))
}

pub fn inverse(a: &CMat) -> Result<CMat> {
    solve(a, &CMat::identity(a.nrows(), a.ncols()))
}

/// Least-squares solution of `a x = b` via SVD, with the largest residual
/// entry relative to `max |b|`.
pub fn lstsq(a: &CMat, b: &CMat) -> Result<(CMat, f64)> {
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let x = svd
        .solve(b, smax * 1e-13)
        .map_err(|e| Error::numeric(format!("least squares failed: {e}")))?;
    let r = a * &x - b;
    let bmax = b.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1e-300);
    let rmax = r.iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok((x, rmax / bmax))
}

/// Numerical rank with relative singular value threshold `tol`.
pub fn rank(a: &CMat, tol: f64) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let sv = a.clone().svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > tol * smax.max(1e-300)).count()
}

/// Orthonormal basis (as columns) of the right null space of `a`.
pub fn null_space(a: &CMat, tol: f64) -> CMat {
    let n = a.ncols();
    if a.nrows() == 0 {
        return CMat::identity(n, n);
    }
    // Pad with zero rows so the SVD returns a full V.
    let rows = a.nrows().max(n);
    let mut padded = CMat::zeros(rows, n);
    padded.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cols: Vec<CVec> = (0..n)
        .filter(|&k| svd.singular_values[k] <= tol * smax.max(1e-300))
        .map(|k| v_t.row(k).adjoint())
        .collect();
    if cols.is_empty() {
        CMat::zeros(n, 0)
    } else {
        CMat::from_columns(&cols)
    }
}

/// Determinant via LU.
pub fn det(a: &CMat) -> C64 {
    a.clone().lu().determinant()
}

/// Matrix from row-major data.
pub fn from_rows(rows: &[Vec<C64>]) -> CMat {
    let r = rows.len();
    let c = rows.first().map_or(0, |v| v.len());
    CMat::from_fn(r, c, |i, j| rows[i][j])
}

/// Largest absolute entry.
pub fn max_abs(a: &CMat) -> f64 {
    a.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Greedy column selection by modified Gram–Schmidt with pivoting: returns
/// indices of `k` columns, always starting with the columns listed in
/// `forced` (in order), then the remaining columns by decreasing residual
/// norm (ties broken by index).
pub fn pivot_columns(a: &CMat, forced: &[usize], k: usize) -> Result<Vec<usize>> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<CVec> = Vec::new();
    let add = |col: usize, chosen: &mut Vec<usize>, basis: &mut Vec<CVec>| -> f64 {
        let mut v: CVec = a.column(col).into_owned();
        for q in basis.iter() {
            let proj = q.dotc(&v);
            v -= q * proj;
        }
        let n = v.norm();
        if n > 0.0 {
            basis.push(v / C64::new(n, 0.0));
        }
        chosen.push(col);
        n
    };
    let scale = max_abs(a).max(1e-300);
    for &f in forced {
        let n = add(f, &mut chosen, &mut basis);
        if n < 1e-10 * scale {
            return Err(Error::numeric("forced columns are linearly dependent"));
        }
    }
    while chosen.len() < k {
        let mut best = None;
        let mut best_norm = 0.0;
        for col in 0..a.ncols() {
            if chosen.contains(&col) {
                continue;
            }
            let mut v: CVec = a.column(col).into_owned();
            for q in basis.iter() {
                let proj = q.dotc(&v);
                v -= q * proj;
            }
            let n = v.norm();
            if n > best_norm * (1.0 + 1e-9) {
                best_norm = n;
                best = Some(col);
            }
        }
        match best {
            Some(col) if best_norm > 1e-10 * scale => {
                add(col, &mut chosen, &mut basis);
            }
            _ => return Err(Error::numeric("not enough independent columns")),
        }
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_of_rank_one() {
        let a = from_rows(&[vec![C64::new(1.0, 0.0), C64::new(2.0, 0.0), C64::new(3.0, 0.0)]]);
        let ns = null_space(&a, 1e-12);
        assert_eq!(ns.ncols(), 2);
        assert!(max_abs(&(&a * &ns)) < 1e-14);
        assert_eq!(rank(&a, 1e-12), 1);
    }
}
