//! Shared brute-force oracles for the integration and acceptance suites.
//!
//! Everything here is deliberately independent of the library's PAVA-based
//! implementation path: minimizers over the monotone(-nonnegative) cone are
//! found by enumerating piecewise-constant patterns (block partitions plus a
//! zero tail) and solving each pattern-restricted problem in closed form or
//! by dense linear algebra. Feasible candidates are compared on the true
//! objective and the global minimum is returned.

#![allow(dead_code)]

use ndarray::{Array1, Array2};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

/// Dense linear solve with partial pivoting; `None` when near-singular.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a
        .iter()
        .flat_map(|row| row.iter().map(|v| v.abs()))
        .fold(1e-300, f64::max);
    for col in 0..n {
        let (pivot_row, pivot_val) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .unwrap();
        if pivot_val < 1e-10 * scale {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for c in r + 1..n {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    Some(x)
}

/// All partitions of `0..len` into consecutive blocks (2^(len−1) of them).
pub fn block_partitions(len: usize) -> Vec<Vec<std::ops::Range<usize>>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << (len - 1)) {
        let mut blocks = Vec::new();
        let mut start = 0;
        for gap in 0..len - 1 {
            if mask & (1 << gap) != 0 {
                blocks.push(start..gap + 1);
                start = gap + 1;
            }
        }
        blocks.push(start..len);
        out.push(blocks);
    }
    out
}

/// All "head partition + zero tail" patterns for a length-`n` sequence:
/// for every head size `t = 0..=n`, every partition of the head.
pub fn cone_patterns(n: usize) -> Vec<Vec<std::ops::Range<usize>>> {
    let mut out = Vec::new();
    for t in 0..=n {
        for blocks in block_partitions(t) {
            out.push(blocks);
        }
    }
    out
}

/// Brute-force weighted isotonic regression (non-increasing, no sign
/// constraint): minimize ½ Σ wᵢ (yᵢ − θᵢ)² over θ₁ ≥ … ≥ θₙ.
pub fn isotonic_oracle(values: &[f64], weights: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for blocks in block_partitions(n) {
        let mut fitted = vec![0.0; n];
        let mut vs = Vec::with_capacity(blocks.len());
        for b in &blocks {
            let w: f64 = weights[b.clone()].iter().sum();
            let wy: f64 = b.clone().map(|i| weights[i] * values[i]).sum();
            let v = wy / w;
            for i in b.clone() {
                fitted[i] = v;
            }
            vs.push(v);
        }
        if vs.windows(2).any(|p| p[0] < p[1]) {
            continue;
        }
        let obj: f64 = (0..n)
            .map(|i| 0.5 * weights[i] * (values[i] - fitted[i]).powi(2))
            .sum();
        if best.as_ref().map_or(true, |(bo, _)| obj < *bo) {
            best = Some((obj, fitted));
        }
    }
    best.unwrap().1
}

/// Brute-force prox of the monotone-nonnegative ℓ1 penalty:
/// minimize λ Σ uᵢ + ½ Σ wᵢ (uᵢ − βᵢ)² over u₁ ≥ … ≥ uₙ ≥ 0.
pub fn cone_prox_oracle(beta: &[f64], weights: Option<&[f64]>, lam: f64) -> Vec<f64> {
    let n = beta.len();
    let unit = vec![1.0; n];
    let w = weights.unwrap_or(&unit);
    let objective = |u: &[f64]| -> f64 {
        (0..n)
            .map(|i| lam * u[i] + 0.5 * w[i] * (u[i] - beta[i]).powi(2))
            .sum()
    };
    let mut best: Option<(f64, Vec<f64>)> = None;
    for blocks in cone_patterns(n) {
        let mut u = vec![0.0; n];
        let mut vs = Vec::with_capacity(blocks.len());
        let mut ok = true;
        for b in &blocks {
            let wsum: f64 = w[b.clone()].iter().sum();
            let wy: f64 = b.clone().map(|i| w[i] * beta[i]).sum();
            let count = b.len() as f64;
            let v = (wy - lam * count) / wsum;
            if v < 0.0 {
                ok = false;
                break;
            }
            for i in b.clone() {
                u[i] = v;
            }
            vs.push(v);
        }
        if !ok || vs.windows(2).any(|p| p[0] < p[1]) {
            continue;
        }
        let obj = objective(&u);
        if best.as_ref().map_or(true, |(bo, _)| obj < *bo) {
            best = Some((obj, u));
        }
    }
    best.unwrap().1
}

/// Brute-force near-isotonic regression: minimize
/// ½ Σ wᵢ (yᵢ − θᵢ)² + theta Σ (θᵢ₊₁ − θᵢ)₊ by enumerating the 3^(n−1)
/// sign patterns of consecutive differences.
pub fn near_iso_oracle(values: &[f64], weights: &[f64], theta: f64) -> Vec<f64> {
    let n = values.len();
    assert!(n >= 1);
    let objective = |f: &[f64]| -> f64 {
        let quad: f64 = (0..n)
            .map(|i| 0.5 * weights[i] * (values[i] - f[i]).powi(2))
            .sum();
        let pen: f64 = f.windows(2).map(|p| (p[1] - p[0]).max(0.0)).sum();
        quad + theta * pen
    };
    let mut best: Option<(f64, Vec<f64>)> = None;
    // Pattern digit per boundary: 0 = equal, 1 = up-jump (penalized),
    // 2 = down-step (free).
    let total = 3usize.pow((n - 1) as u32);
    for code in 0..total {
        let mut digits = Vec::with_capacity(n - 1);
        let mut c = code;
        for _ in 0..n - 1 {
            digits.push(c % 3);
            c /= 3;
        }
        // Blocks = maximal runs of "equal" boundaries.
        let mut blocks: Vec<std::ops::Range<usize>> = Vec::new();
        let mut start = 0;
        for (b, &d) in digits.iter().enumerate() {
            if d != 0 {
                blocks.push(start..b + 1);
                start = b + 1;
            }
        }
        blocks.push(start..n);
        // Up-jump indicator after each block.
        let ups: Vec<bool> = blocks
            .iter()
            .take(blocks.len() - 1)
            .map(|b| digits[b.end - 1] == 1)
            .collect();
        let mut fitted = vec![0.0; n];
        let mut vs = Vec::with_capacity(blocks.len());
        for (bi, b) in blocks.iter().enumerate() {
            let wsum: f64 = weights[b.clone()].iter().sum();
            let wy: f64 = b.clone().map(|i| weights[i] * values[i]).sum();
            let a_right = if bi < ups.len() && ups[bi] { 1.0 } else { 0.0 };
            let a_left = if bi > 0 && ups[bi - 1] { 1.0 } else { 0.0 };
            let v = (wy + theta * (a_right - a_left)) / wsum;
            for i in b.clone() {
                fitted[i] = v;
            }
            vs.push(v);
        }
        // Consistency of the assumed pattern.
        let mut ok = true;
        for (bi, &up) in ups.iter().enumerate() {
            let gap = vs[bi + 1] - vs[bi];
            if up && gap <= 0.0 {
                ok = false;
            }
            if !up && gap >= 0.0 {
                ok = false;
            }
        }
        if !ok {
            continue;
        }
        let obj = objective(&fitted);
        if best.as_ref().map_or(true, |(bo, _)| obj < *bo) {
            best = Some((obj, fitted));
        }
    }
    best.unwrap().1
}

/// Brute-force ordered lasso: minimize
/// ½‖y − X(β⁺−β⁻)‖² + λ Σ (βⱼ⁺+βⱼ⁻) over both halves in the cone, by
/// enumerating plateau/zero-tail patterns for each half and solving the
/// pattern-restricted least-squares problem.
///
/// Returns the optimal objective value.
pub fn ordered_lasso_oracle(x: &Array2<f64>, y: &Array1<f64>, lam: f64) -> f64 {
    let n = x.nrows();
    let p = x.ncols();
    let patterns = cone_patterns(p);
    let mut best = f64::INFINITY;
    for pat_plus in &patterns {
        for pat_minus in &patterns {
            let m = pat_plus.len() + pat_minus.len();
            if m == 0 {
                let obj = 0.5 * y.dot(y);
                if obj < best {
                    best = obj;
                }
                continue;
            }
            // Collapsed design: one column per block (negated for β⁻).
            let mut cols: Vec<Vec<f64>> = Vec::with_capacity(m);
            let mut pen: Vec<f64> = Vec::with_capacity(m);
            for b in pat_plus {
                let mut col = vec![0.0; n];
                for j in b.clone() {
                    for i in 0..n {
                        col[i] += x[[i, j]];
                    }
                }
                cols.push(col);
                pen.push(lam * b.len() as f64);
            }
            for b in pat_minus {
                let mut col = vec![0.0; n];
                for j in b.clone() {
                    for i in 0..n {
                        col[i] -= x[[i, j]];
                    }
                }
                cols.push(col);
                pen.push(lam * b.len() as f64);
            }
            // Normal equations for ½‖y − Av‖² + penᵀv.
            let mut ata = vec![vec![0.0; m]; m];
            let mut rhs = vec![0.0; m];
            for a in 0..m {
                for b in a..m {
                    let dot: f64 = cols[a].iter().zip(&cols[b]).map(|(u, v)| u * v).sum();
                    ata[a][b] = dot;
                    ata[b][a] = dot;
                }
                rhs[a] = cols[a].iter().zip(y.iter()).map(|(u, v)| u * v).sum::<f64>() - pen[a];
            }
            let Some(v) = solve_dense(ata, rhs) else {
                continue;
            };
            // Feasibility: per half, non-increasing and nonnegative.
            let np = pat_plus.len();
            let feas = |vals: &[f64]| {
                vals.iter().all(|&u| u >= 0.0) && vals.windows(2).all(|w| w[0] >= w[1])
            };
            if !feas(&v[..np]) || !feas(&v[np..]) {
                continue;
            }
            let mut resid: Vec<f64> = y.to_vec();
            for (c, &vi) in cols.iter().zip(&v) {
                for i in 0..n {
                    resid[i] -= c[i] * vi;
                }
            }
            let obj = 0.5 * resid.iter().map(|r| r * r).sum::<f64>()
                + pen.iter().zip(&v).map(|(c, vi)| c * vi).sum::<f64>();
            if obj < best {
                best = obj;
            }
        }
    }
    best
}

/// FISTA on the split blockwise problem with the enumeration-based cone prox
/// per block. Used as an independent oracle for the blockwise objective when
/// full pattern enumeration is too large. Returns the best objective seen.
pub fn fista_block_oracle(
    x: &Array2<f64>,
    y: &Array1<f64>,
    lam: f64,
    block_len: usize,
    iters: usize,
) -> f64 {
    let n = x.nrows();
    let p = x.ncols();
    assert_eq!(p % block_len, 0);
    let dim = 2 * p;
    // A = [X, -X]; lipschitz constant via power iteration on AᵀA.
    let a_mul = |v: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for i in 0..n {
            let mut s = 0.0;
            for j in 0..p {
                s += x[[i, j]] * (v[j] - v[p + j]);
            }
            out[i] = s;
        }
        out
    };
    let at_mul = |r: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; dim];
        for j in 0..p {
            let mut s = 0.0;
            for i in 0..n {
                s += x[[i, j]] * r[i];
            }
            out[j] = s;
            out[p + j] = -s;
        }
        out
    };
    let mut v = vec![1.0; dim];
    let mut lipschitz = 1.0;
    for _ in 0..200 {
        let av = a_mul(&v);
        let atav = at_mul(&av);
        let norm = atav.iter().map(|u| u * u).sum::<f64>().sqrt();
        if norm < 1e-300 {
            break;
        }
        lipschitz = norm;
        for (vi, ui) in v.iter_mut().zip(&atav) {
            *vi = ui / norm;
        }
    }
    let step = 1.0 / (lipschitz * 1.01);

    let objective = |theta: &[f64]| -> f64 {
        let av = a_mul(theta);
        let resid: f64 = av
            .iter()
            .zip(y.iter())
            .map(|(f, yy)| (f - yy) * (f - yy))
            .sum();
        0.5 * resid + lam * theta.iter().sum::<f64>()
    };
    let prox = |point: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; dim];
        for b in (0..dim).step_by(block_len) {
            let sol = cone_prox_oracle(&point[b..b + block_len], None, step * lam);
            out[b..b + block_len].copy_from_slice(&sol);
        }
        out
    };

    let mut theta = vec![0.0; dim];
    let mut momentum = theta.clone();
    let mut t_acc = 1.0;
    let mut best = objective(&theta);
    let mut prev_obj = best;
    for _ in 0..iters {
        let av = a_mul(&momentum);
        let resid: Vec<f64> = av.iter().zip(y.iter()).map(|(f, yy)| f - yy).collect();
        let grad = at_mul(&resid);
        let point: Vec<f64> = momentum
            .iter()
            .zip(&grad)
            .map(|(m, g)| m - step * g)
            .collect();
        let next = prox(&point);
        let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t_acc * t_acc).sqrt());
        let beta = (t_acc - 1.0) / t_next;
        momentum = next
            .iter()
            .zip(&theta)
            .map(|(nw, old)| nw + beta * (nw - old))
            .collect();
        theta = next;
        t_acc = t_next;
        let obj = objective(&theta);
        if obj < best {
            best = obj;
        }
        // Restart the momentum when the objective rises.
        if obj > prev_obj {
            momentum = theta.clone();
            t_acc = 1.0;
        }
        prev_obj = obj;
    }
    best
}
