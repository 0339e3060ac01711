//! Robinson–Schensted row insertion and the permutation/tableau-pair bijection.

use std::fmt;

use thiserror::Error;

use crate::partitions::Partition;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RskError {
    #[error("{0} is already present in the tableau")]
    DuplicateEntry(usize),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("tableau shapes differ: {p} vs {q}")]
    ShapeMismatch { p: String, q: String },
}

/// Rows of a standard Young tableau filled with `1..=m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, RskError> {
        let bad = |msg: String| Err(RskError::InvalidTableau(msg));
        if rows.iter().any(Vec::is_empty) {
            return bad("empty row".into());
        }
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return bad("row lengths must weakly decrease".into());
        }
        let m: usize = rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; m + 1];
        for &v in rows.iter().flatten() {
            if v == 0 || v > m || seen[v] {
                return bad(format!("entries must be exactly 1..={m}"));
            }
            seen[v] = true;
        }
        for row in &rows {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return bad("rows must strictly increase".into());
            }
        }
        for w in rows.windows(2) {
            if w[1].iter().zip(&w[0]).any(|(below, above)| below <= above) {
                return bad("columns must strictly increase".into());
            }
        }
        Ok(StandardTableau { rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("validated shape")
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            write!(f, "[{}]", cells.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

impl serde::Serialize for StandardTableau {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

/// Inserts `x` into the partial tableau `rows` by row bumping and returns the
/// 1-based `(row, column)` of the new cell.
pub fn row_insert(rows: &mut Vec<Vec<usize>>, x: usize) -> Result<(usize, usize), RskError> {
    if rows.iter().flatten().any(|&v| v == x) {
        return Err(RskError::DuplicateEntry(x));
    }
    let mut x = x;
    let mut r = 0;
    loop {
        if r == rows.len() {
            rows.push(vec![x]);
            return Ok((r + 1, 1));
        }
        let row = &mut rows[r];
        // rows are strictly increasing, so the first greater entry is the smallest one
        match row.iter().position(|&y| y > x) {
            Some(pos) => {
                x = std::mem::replace(&mut row[pos], x);
                r += 1;
            }
            None => {
                row.push(x);
                return Ok((r + 1, row.len()));
            }
        }
    }
}

/// Insertion and recording tableaux of the word `pi(1) .. pi(n)`.
pub fn rsk_pair(pi: &Permutation) -> (StandardTableau, StandardTableau) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (t, x) in pi.one_line().into_iter().enumerate() {
        let (row, col) = row_insert(&mut p, x).expect("permutation words have no repeats");
        if row > q.len() {
            q.push(Vec::new());
        }
        debug_assert_eq!(q[row - 1].len() + 1, col);
        q[row - 1].push(t + 1);
    }
    (StandardTableau { rows: p }, StandardTableau { rows: q })
}

/// Reverse bumping: peels the cell holding the largest recording entry, one step at a time.
pub fn inverse_rsk(p: &StandardTableau, q: &StandardTableau) -> Result<Permutation, RskError> {
    if p.shape() != q.shape() {
        return Err(RskError::ShapeMismatch { p: p.shape().to_string(), q: q.shape().to_string() });
    }
    let n = p.size();
    let mut p_rows = p.rows.clone();
    let mut q_rows = q.rows.clone();
    let mut word = vec![0usize; n];
    for t in (1..=n).rev() {
        let r = q_rows
            .iter()
            .position(|row| row.last() == Some(&t))
            .ok_or_else(|| RskError::InvalidTableau(format!("entry {t} is not at the end of a row")))?;
        q_rows[r].pop();
        let mut x = p_rows[r].pop().expect("shapes match");
        if q_rows[r].is_empty() {
            q_rows.pop();
            p_rows.pop();
        }
        for row in p_rows[..r].iter_mut().rev() {
            // largest entry smaller than x gets bumped back up
            let pos = row
                .iter()
                .rposition(|&y| y < x)
                .ok_or_else(|| RskError::InvalidTableau("column condition violated".into()))?;
            x = std::mem::replace(&mut row[pos], x);
        }
        word[t - 1] = x;
    }
    Permutation::from_one_line(&word).map_err(|e| RskError::InvalidTableau(e.to_string()))
}

/// Every standard tableau of the given shape, generated by placing the
/// largest entry in each removable corner.
pub fn standard_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    fn rec(lengths: &mut Vec<usize>, filled: &mut Vec<Vec<usize>>, next: usize, out: &mut Vec<StandardTableau>) {
        let total: usize = lengths.iter().sum();
        if next > total {
            out.push(StandardTableau { rows: filled.clone() });
            return;
        }
        for r in 0..lengths.len() {
            let len = filled[r].len();
            let fits_row = len < lengths[r];
            let fits_col = r == 0 || filled[r - 1].len() > len;
            if fits_row && fits_col {
                filled[r].push(next);
                rec(lengths, filled, next + 1, out);
                filled[r].pop();
            }
        }
    }
    let mut lengths = shape.parts().to_vec();
    let mut filled = vec![Vec::new(); lengths.len()];
    let mut out = Vec::new();
    rec(&mut lengths, &mut filled, 1, &mut out);
    out
}
