//! Exact rank of small integer matrices.

use crate::error::{Error, Result};

/// Rank over `Q` by fraction-free (Bareiss) elimination. Intermediate
/// entries are minors of the input, so they stay integral; overflow of the
/// `i128` accumulator is reported rather than wrapped.
pub fn rank(rows: &[Vec<i64>]) -> Result<usize> {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let a = m[rank][col].checked_mul(m[r][c]).ok_or(Error::Overflow)?;
                let b = m[r][col].checked_mul(m[rank][c]).ok_or(Error::Overflow)?;
                m[r][c] = a.checked_sub(b).ok_or(Error::Overflow)? / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
    }
    Ok(rank)
}
