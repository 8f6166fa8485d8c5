//! Young's natural representation of `S_n` on Specht modules.

use std::collections::HashMap;

use crate::cyclo::Cyclotomic;
use crate::linalg::Matrix;
use crate::perm::Permutation;

/// Partitions of `n`, largest first part first: `[n], [n-1,1], …, [1^n]`.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Standard tableaux of shape `lambda` as rows of entries `0..n`, ordered
/// lexicographically by their row reading word.
pub fn standard_tableaux(lambda: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let n: usize = lambda.iter().sum();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); lambda.len()];
    fn rec(k: usize, n: usize, lambda: &[usize], rows: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if k == n {
            out.push(rows.clone());
            return;
        }
        for r in 0..lambda.len() {
            let len = rows[r].len();
            if len < lambda[r] && (r == 0 || rows[r - 1].len() > len) {
                rows[r].push(k);
                rec(k + 1, n, lambda, rows, out);
                rows[r].pop();
            }
        }
    }
    rec(0, n, lambda, &mut rows, &mut out);
    out.sort_by_key(|a| a.concat());
    out
}

/// Hook length formula.
pub fn hook_dimension(lambda: &[usize]) -> u64 {
    let n: usize = lambda.iter().sum();
    let mut conj = vec![0usize; lambda.first().copied().unwrap_or(0)];
    for &l in lambda {
        for c in conj.iter_mut().take(l) {
            *c += 1;
        }
    }
    let mut num: u128 = (1..=n as u128).product();
    for (i, &l) in lambda.iter().enumerate() {
        for j in 0..l {
            let hook = (l - j - 1) + (conj[j] - i - 1) + 1;
            num /= hook as u128;
        }
    }
    num as u64
}

type Tabloid = Vec<u8>;

/// Polytabloid `e_T = Σ_{σ ∈ C_T} sign(σ) {σT}` keyed by "row of each entry".
fn polytabloid(t: &[Vec<usize>], n: usize) -> HashMap<Tabloid, i64> {
    let ncols = t.first().map_or(0, Vec::len);
    let columns: Vec<Vec<usize>> = (0..ncols)
        .map(|c| t.iter().take_while(|row| row.len() > c).map(|row| row[c]).collect())
        .collect();
    let col_perms: Vec<Vec<(Vec<usize>, i64)>> = columns.iter().map(|c| signed_permutations(c.len())).collect();
    let mut out = HashMap::new();
    let mut idx = vec![0usize; ncols];
    loop {
        let mut rows = vec![0u8; n];
        let mut sign = 1;
        for (c, col) in columns.iter().enumerate() {
            let (perm, s) = &col_perms[c][idx[c]];
            sign *= s;
            for (r, &p) in perm.iter().enumerate() {
                rows[col[p]] = r as u8;
            }
        }
        *out.entry(rows).or_insert(0) += sign;
        let mut c = 0;
        loop {
            if c == ncols {
                return out;
            }
            idx[c] += 1;
            if idx[c] < col_perms[c].len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}

fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        let k = used.len();
        if prefix.len() == k {
            let inversions = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| prefix[i] > prefix[j]).count();
            out.push((prefix.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for x in 0..k {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Integer matrices of Young's natural representation for each generator.
///
/// `ρ(π)` is the transpose of the matrix of `e_T ↦ e_{πT}`, so that
/// `ρ(p * q) = ρ(p) ρ(q)` for the left-to-right permutation product.
pub fn specht_images(lambda: &[usize], generators: &[Permutation]) -> Vec<Matrix> {
    let n: usize = lambda.iter().sum();
    let tableaux = standard_tableaux(lambda);
    let d = tableaux.len();
    let tabloid_of = |t: &Vec<Vec<usize>>| -> Tabloid {
        let mut rows = vec![0u8; n];
        for (r, row) in t.iter().enumerate() {
            for &x in row {
                rows[x] = r as u8;
            }
        }
        rows
    };
    let std_tabloids: Vec<Tabloid> = tableaux.iter().map(tabloid_of).collect();
    let position: HashMap<&Tabloid, usize> = std_tabloids.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let restrict = |v: &HashMap<Tabloid, i64>| -> Matrix {
        let mut col = Matrix::zeros(d, 1);
        for (tab, &c) in v {
            if let Some(&i) = position.get(tab) {
                col[(i, 0)] = Cyclotomic::from_int(c);
            }
        }
        col
    };
    // basis polytabloids in standard-tabloid coordinates
    let basis_cols: Vec<Matrix> = tableaux.iter().map(|t| restrict(&polytabloid(t, n))).collect();
    let basis = Matrix::hcat(&basis_cols).expect("same height");
    let basis_inv = basis.invert().expect("standard polytabloids are independent");
    generators
        .iter()
        .map(|g| {
            let moved: Vec<Matrix> = tableaux
                .iter()
                .map(|t| {
                    let gt: Vec<Vec<usize>> = t.iter().map(|row| row.iter().map(|&x| g.apply(x)).collect()).collect();
                    restrict(&polytabloid(&gt, n))
                })
                .collect();
            let coords = basis_inv.mul(&Matrix::hcat(&moved).expect("same height"));
            coords.transpose()
        })
        .collect()
}
