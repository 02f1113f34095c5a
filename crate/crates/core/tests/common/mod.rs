#![allow(dead_code)]

use steinkit::front::{FrontDiagram, FrontEvent};

pub const MAX_STRANDS: usize = 10;

/// Turns arbitrary `(kind, value)` choices into a valid event word: each
/// choice is coerced to an event that is legal at its point in the word, and
/// the word is closed off with right cusps.
pub fn front_from_choices(choices: &[(u8, u32)]) -> FrontDiagram {
    let mut events = Vec::new();
    let mut height = 0usize;
    for &(kind, value) in choices {
        let value = value as usize;
        let kind = if height < 2 {
            0
        } else if height >= MAX_STRANDS {
            1 + kind % 2
        } else {
            kind % 3
        };
        let event = match kind {
            0 => FrontEvent::left(value % (height + 1)),
            1 => FrontEvent::right(value % (height - 1)),
            _ => FrontEvent::crossing(value % (height - 1)),
        };
        match kind {
            0 => height += 2,
            1 => height -= 2,
            _ => {}
        }
        events.push(event);
    }
    if events.is_empty() {
        events.push(FrontEvent::left(0));
        height = 2;
    }
    let mut k = 0usize;
    while height > 0 {
        events.push(FrontEvent::right((k * 7) % (height - 1)));
        height -= 2;
        k += 1;
    }
    FrontDiagram::new(events, []).expect("generated word is valid")
}

/// Event indices just before which component `c` has a strand.
pub fn insertion_points(d: &FrontDiagram, c: usize) -> Vec<usize> {
    use steinkit::front::ZigZag;
    (0..d.events().len())
        .filter(|&at| d.stabilize(c, ZigZag::Up, at).is_ok())
        .collect()
}

/// Determinant by permutation expansion.
pub fn leibniz_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i128;
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, m: &[Vec<i64>], total: &mut i128) {
    let n = perm.len();
    if k == n {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        let prod: i128 = (0..n).map(|i| m[i][perm[i]] as i128).product();
        *total += sign * prod;
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, m, total);
        perm.swap(k, i);
    }
}

/// Signature from the signs of leading principal minors (Jacobi), when
/// none of them vanishes.
pub fn jacobi_signature(m: &[Vec<i64>]) -> Option<i64> {
    let n = m.len();
    let mut prev = 1i128;
    let mut sig = 0;
    for k in 1..=n {
        let minor: Vec<Vec<i64>> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
        let d = leibniz_det(&minor);
        if d == 0 {
            return None;
        }
        sig += if (d > 0) == (prev > 0) { 1 } else { -1 };
        prev = d;
    }
    Some(sig)
}

/// `Pᵀ D P` for a unimodular `P` built from elementary row operations.
pub fn unimodular_form(diag: &[i64], ops: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let n = diag.len();
    let mut p: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for &(i, j, f) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let src = p[j].clone();
        for (dst, v) in p[i].iter_mut().zip(src) {
            *dst += f * v;
        }
    }
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| (0..n).map(|k| p[k][a] * diag[k] * p[k][b]).sum())
                .collect()
        })
        .collect()
}

/// `(p, q)` with `2 <= p < q <= bound` and `gcd(p, q) = 1`.
pub fn coprime_pairs(bound: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for p in 2..=bound {
        for q in p + 1..=bound {
            if num_gcd(p, q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

pub fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}
