//! Row reduction and nullspaces over prime fields, enough to describe
//! kernels of group matrices without enumerating the function space.

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref_mod_p(rows: &mut Vec<Vec<u32>>, p: u32) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = mod_inverse(rows[rank][col], p);
        for v in rows[rank].iter_mut() {
            *v = (*v as u64 * inv as u64 % p as u64) as u32;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] % p != 0 {
                let factor = rows[r][col] % p;
                for c in 0..ncols {
                    let sub = factor as u64 * rows[rank][c] as u64 % p as u64;
                    rows[r][c] = ((rows[r][c] as u64 + p as u64 * p as u64 - sub) % p as u64) as u32;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

/// Basis of `{v : M v = 0}` over `F_p`. Each basis vector has a `1` at
/// its own free column and `0` at every other free column, so reducing
/// an arbitrary vector against the basis yields a canonical coset
/// representative with zeros at all free columns.
pub(crate) fn nullspace_mod_p(matrix: &[Vec<u32>], p: u32) -> (Vec<Vec<u32>>, Vec<usize>) {
    let ncols = matrix.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<u32>> = matrix.iter().map(|r| r.iter().map(|&v| v % p).collect()).collect();
    let pivots = rref_mod_p(&mut rows, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![0u32; ncols];
        v[f] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - rows[i][f] % p) % p;
        }
        basis.push(v);
    }
    (basis, free)
}

/// Determinant over `F_p` by Gaussian elimination.
pub(crate) fn det_mod_p(matrix: &[Vec<u32>], p: u32) -> u32 {
    let n = matrix.len();
    let mut rows: Vec<Vec<u32>> = matrix.iter().map(|r| r.iter().map(|&v| v % p).collect()).collect();
    let mut det = 1u64;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| rows[r][col] != 0) else {
            return 0;
        };
        if pivot != col {
            rows.swap(pivot, col);
            det = det * (p as u64 - 1) % p as u64;
        }
        det = det * rows[col][col] as u64 % p as u64;
        let inv = mod_inverse(rows[col][col], p) as u64;
        for r in col + 1..n {
            if rows[r][col] != 0 {
                let factor = rows[r][col] as u64 * inv % p as u64;
                for c in col..n {
                    let sub = factor * rows[col][c] as u64 % p as u64;
                    rows[r][c] = ((rows[r][c] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
    }
    det as u32
}

pub(crate) fn mod_inverse(a: u32, p: u32) -> u32 {
    // Fermat: p prime, a nonzero mod p.
    let mut result = 1u64;
    let mut base = (a % p) as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}
