//! Rank of sparse matrices over GF(2).

use std::collections::HashMap;

/// Rank of the matrix whose rows are given as lists of column indices
/// (duplicates cancel in pairs).
pub fn rank(rows: Vec<Vec<u32>>) -> usize {
    // pivot column -> reduced row with that leading (smallest) column
    let mut pivots: HashMap<u32, Vec<u32>> = HashMap::new();
    let mut r = 0;
    for row in rows {
        let mut row = normalize(row);
        while let Some(&lead) = row.first() {
            match pivots.get(&lead) {
                Some(p) => row = xor(&row, p),
                None => {
                    pivots.insert(lead, row);
                    r += 1;
                    break;
                }
            }
        }
    }
    r
}

fn normalize(mut row: Vec<u32>) -> Vec<u32> {
    row.sort_unstable();
    let mut out: Vec<u32> = Vec::with_capacity(row.len());
    for c in row {
        if out.last() == Some(&c) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    out
}

/// Symmetric difference of two sorted, duplicate-free lists.
fn xor(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
