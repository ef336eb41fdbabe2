//! Exact Phase-I simplex over rationals (Bland's rule, so it terminates).

use crate::scalar::Scalar;

/// Is `{x >= 0 : A x = b}` non-empty?
pub fn feasible(a: &[Vec<Scalar>], b: &[Scalar]) -> bool {
    let rows = a.len();
    if rows == 0 {
        return true;
    }
    let cols = a[0].len();
    // Tableau: original columns, one artificial per row, then rhs.
    let width = cols + rows + 1;
    let mut t: Vec<Vec<Scalar>> = Vec::with_capacity(rows + 1);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].signum() < 0;
        let mut r = Vec::with_capacity(width);
        for v in row {
            r.push(if flip { -v.clone() } else { v.clone() });
        }
        for j in 0..rows {
            r.push(if i == j { Scalar::ONE } else { Scalar::ZERO });
        }
        r.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(r);
    }
    // Objective row: minimise the artificial sum, written as reduced costs.
    let mut obj = vec![Scalar::ZERO; width];
    for r in &t {
        for j in 0..cols {
            obj[j] = &obj[j] - &r[j];
        }
        obj[width - 1] = &obj[width - 1] - &r[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (cols..cols + rows).collect();

    loop {
        let z = &t[rows];
        let Some(enter) = (0..cols + rows).find(|&j| z[j].signum() < 0) else { break };
        let mut leave: Option<(usize, Scalar)> = None;
        for i in 0..rows {
            if t[i][enter].signum() > 0 {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((p, _)) = leave else { break };
        pivot(&mut t, p, enter);
        basis[p] = enter;
    }
    t[rows][width - 1].is_zero()
}

fn pivot(t: &mut [Vec<Scalar>], p: usize, q: usize) {
    let inv = &Scalar::ONE / &t[p][q];
    for v in t[p].iter_mut() {
        *v = &*v * &inv;
    }
    let prow = t[p].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == p || row[q].is_zero() {
            continue;
        }
        let f = row[q].clone();
        for (v, pv) in row.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v = &*v - &(&f * pv);
            }
        }
    }
}

/// Do the convex hulls of two vertex sets meet?
pub fn hulls_intersect(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    let d = a[0].len();
    let cols = a.len() + b.len();
    let mut rows = Vec::with_capacity(d + 2);
    for k in 0..d {
        let mut r = Vec::with_capacity(cols);
        r.extend(a.iter().map(|v| v[k].clone()));
        r.extend(b.iter().map(|v| -v[k].clone()));
        rows.push(r);
    }
    let mut sa = vec![Scalar::ZERO; cols];
    let mut sb = vec![Scalar::ZERO; cols];
    for j in 0..a.len() {
        sa[j] = Scalar::ONE;
    }
    for j in a.len()..cols {
        sb[j] = Scalar::ONE;
    }
    rows.push(sa);
    rows.push(sb);
    let mut rhs = vec![Scalar::ZERO; d];
    rhs.push(Scalar::ONE);
    rhs.push(Scalar::ONE);
    feasible(&rows, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Scalar>> {
        v.iter().map(|p| p.iter().map(|&x| Scalar::int(x)).collect()).collect()
    }

    #[test]
    fn simple_feasibility() {
        // x + y = 1, x - y = 3  ->  x = 2, y = -1: infeasible for x, y >= 0.
        let a = vec![vec![Scalar::int(1), Scalar::int(1)], vec![Scalar::int(1), Scalar::int(-1)]];
        assert!(!feasible(&a, &[Scalar::int(1), Scalar::int(3)]));
        assert!(feasible(&a, &[Scalar::int(2), Scalar::int(0)]));
    }

    #[test]
    fn hulls() {
        let tri = pts(&[&[0, 0], &[4, 0], &[0, 4]]);
        assert!(hulls_intersect(&tri, &pts(&[&[2, 2]])));
        assert!(!hulls_intersect(&tri, &pts(&[&[3, 2]])));
        assert!(hulls_intersect(&tri, &pts(&[&[3, 2], &[1, 0]])));
        assert!(!hulls_intersect(&tri, &pts(&[&[5, 5], &[3, 2]])));
    }
}
