use std::fmt;

use super::field::FieldTables;

/// Affine plane of order `q`: `q^2` points, `q^2 + q` lines in `q + 1`
/// parallel classes.
///
/// Point `(a, b)` has id `a * q + b`. Lines with slope `m` come first, ordered by
/// slope then intercept (`id = m * q + c`); the `q` vertical lines `x = a` come
/// last (`id = q^2 + a`). Class `m < q` holds the slope-`m` lines and class `q`
/// is the vertical class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePlane {
    pub q: usize,
    pub lines: Vec<Vec<usize>>,
    pub classes: Vec<Vec<usize>>,
}

impl AffinePlane {
    pub fn num_points(&self) -> usize {
        self.q * self.q
    }

    pub fn point(&self, a: usize, b: usize) -> usize {
        a * self.q + b
    }

    /// Class index of each line.
    pub fn class_of_line(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.lines.len()];
        for (c, class) in self.classes.iter().enumerate() {
            for &l in class {
                out[l] = c;
            }
        }
        out
    }

    /// `table[x * q^2 + y]` is the line through distinct points `x` and `y`.
    /// Diagonal entries are `usize::MAX`. Assumes a valid plane.
    pub fn line_through_table(&self) -> Vec<usize> {
        let np = self.num_points();
        let mut table = vec![usize::MAX; np * np];
        for (l, pts) in self.lines.iter().enumerate() {
            for &x in pts {
                for &y in pts {
                    if x != y {
                        table[x * np + y] = l;
                    }
                }
            }
        }
        table
    }
}

pub fn build_affine_plane(field: &FieldTables) -> AffinePlane {
    let q = field.q();
    let mut lines = Vec::with_capacity(q * q + q);
    let mut classes = Vec::with_capacity(q + 1);
    for m in field.elements() {
        let mut class = Vec::with_capacity(q);
        for c in field.elements() {
            class.push(lines.len());
            let mut pts: Vec<usize> = field
                .elements()
                .map(|x| x * q + field.add(field.mul(m, x), c))
                .collect();
            pts.sort_unstable();
            lines.push(pts);
        }
        classes.push(class);
    }
    let mut vertical = Vec::with_capacity(q);
    for a in field.elements() {
        vertical.push(lines.len());
        lines.push((0..q).map(|y| a * q + y).collect());
    }
    classes.push(vertical);
    AffinePlane { q, lines, classes }
}

/// First invariant violation found by [`validate_affine_plane`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlaneViolation {
    LineCount {
        expected: usize,
        found: usize,
    },
    BadLine {
        line: usize,
        reason: String,
    },
    PairUncovered(usize, usize),
    PairCoveredTwice {
        pair: (usize, usize),
        lines: (usize, usize),
    },
    ClassCount {
        expected: usize,
        found: usize,
    },
    BadClass {
        class: usize,
        reason: String,
    },
}

impl fmt::Display for PlaneViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LineCount { expected, found } => {
                write!(f, "expected {expected} lines, found {found}")
            }
            Self::BadLine { line, reason } => write!(f, "line {line}: {reason}"),
            Self::PairUncovered(x, y) => write!(f, "points {x} and {y} share no line"),
            Self::PairCoveredTwice { pair, lines } => write!(
                f,
                "points {} and {} lie on lines {} and {}",
                pair.0, pair.1, lines.0, lines.1
            ),
            Self::ClassCount { expected, found } => {
                write!(f, "expected {expected} parallel classes, found {found}")
            }
            Self::BadClass { class, reason } => write!(f, "class {class}: {reason}"),
        }
    }
}

/// Exhaustively checks the line count, exact pair coverage, and the
/// parallel-class partition.
pub fn validate_affine_plane(plane: &AffinePlane) -> Result<(), PlaneViolation> {
    let q = plane.q;
    let np = q * q;
    for (l, pts) in plane.lines.iter().enumerate() {
        if pts.len() != q {
            return Err(PlaneViolation::BadLine {
                line: l,
                reason: format!("has {} points, expected {q}", pts.len()),
            });
        }
        if let Some(&x) = pts.iter().find(|&&x| x >= np) {
            return Err(PlaneViolation::BadLine {
                line: l,
                reason: format!("point {x} out of range"),
            });
        }
    }

    let mut cover = vec![usize::MAX; np * np];
    for (l, pts) in plane.lines.iter().enumerate() {
        for (i, &x) in pts.iter().enumerate() {
            for &y in &pts[i + 1..] {
                let (x, y) = (x.min(y), x.max(y));
                if x == y {
                    return Err(PlaneViolation::BadLine {
                        line: l,
                        reason: format!("repeats point {x}"),
                    });
                }
                let slot = &mut cover[x * np + y];
                if *slot != usize::MAX {
                    return Err(PlaneViolation::PairCoveredTwice {
                        pair: (x, y),
                        lines: (*slot, l),
                    });
                }
                *slot = l;
            }
        }
    }
    for x in 0..np {
        for y in x + 1..np {
            if cover[x * np + y] == usize::MAX {
                return Err(PlaneViolation::PairUncovered(x, y));
            }
        }
    }
    // exact pair coverage already forces q^2 + q lines; kept for corrupted inputs
    if plane.lines.len() != q * q + q {
        return Err(PlaneViolation::LineCount {
            expected: q * q + q,
            found: plane.lines.len(),
        });
    }

    if plane.classes.len() != q + 1 {
        return Err(PlaneViolation::ClassCount {
            expected: q + 1,
            found: plane.classes.len(),
        });
    }
    let mut line_seen = vec![false; plane.lines.len()];
    for (c, class) in plane.classes.iter().enumerate() {
        if class.len() != q {
            return Err(PlaneViolation::BadClass {
                class: c,
                reason: format!("has {} lines, expected {q}", class.len()),
            });
        }
        let mut hit = vec![false; np];
        for &l in class {
            if l >= plane.lines.len() || std::mem::replace(&mut line_seen[l], true) {
                return Err(PlaneViolation::BadClass {
                    class: c,
                    reason: format!("line {l} missing or assigned twice"),
                });
            }
            for &x in &plane.lines[l] {
                if std::mem::replace(&mut hit[x], true) {
                    return Err(PlaneViolation::BadClass {
                        class: c,
                        reason: format!("lines are not disjoint at point {x}"),
                    });
                }
            }
        }
        // q disjoint lines of q points each cover all q^2 points
    }
    Ok(())
}
