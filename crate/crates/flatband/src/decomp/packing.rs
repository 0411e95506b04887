//! Dense 2×2 packings of a 2D torus.
//!
//! A layer of any 4-cycle decomposition is a set of 2×2 squares in which
//! every vertex belongs to exactly one square (a hard-core dense packing
//! with a Moore neighborhood). Every such packing is one of the four regular
//! grids with either some columns shifted by one square or some rows shifted
//! by one square, never both.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::cover::ExactCover;

/// Complete enumeration refuses extents beyond this (the search is exact).
pub const MAX_PACKING_EXTENT: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PackingError {
    #[error("extent must be even \u{2265} 4 (got {0})")]
    InvalidExtent(usize),
    #[error("extent {0} exceeds the complete-enumeration cap {MAX_PACKING_EXTENT}")]
    ExtentTooLarge(usize),
}

/// A set of 2×2 square anchors on the `(la, lb)` torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Packing2D {
    extents: (usize, usize),
    /// Sorted anchor coordinates.
    anchors: Vec<(usize, usize)>,
}

impl Packing2D {
    pub fn new(extents: (usize, usize), mut anchors: Vec<(usize, usize)>) -> Self {
        anchors.sort_unstable();
        Packing2D { extents, anchors }
    }

    pub fn extents(&self) -> (usize, usize) {
        self.extents
    }

    pub fn anchors(&self) -> &[(usize, usize)] {
        &self.anchors
    }

    /// The four vertices covered by the square anchored at `(x, y)`.
    fn cells(&self, x: usize, y: usize) -> [(usize, usize); 4] {
        let (la, lb) = self.extents;
        [
            (x, y),
            ((x + 1) % la, y),
            (x, (y + 1) % lb),
            ((x + 1) % la, (y + 1) % lb),
        ]
    }

    /// True iff every vertex of the torus is covered exactly once.
    pub fn is_perfect_packing(&self) -> bool {
        let (la, lb) = self.extents;
        let mut cover = vec![0usize; la * lb];
        for &(x, y) in &self.anchors {
            for (cx, cy) in self.cells(x, y) {
                cover[cx * lb + cy] += 1;
            }
        }
        cover.iter().all(|&c| c == 1)
    }

    /// Printable grid; each vertex shows the index of its covering square.
    pub fn to_ascii(&self) -> String {
        let (la, lb) = self.extents;
        let mut owner = vec![None::<usize>; la * lb];
        for (i, &(x, y)) in self.anchors.iter().enumerate() {
            for (cx, cy) in self.cells(x, y) {
                owner[cx * lb + cy] = Some(i);
            }
        }
        const GLYPHS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
        let mut s = String::new();
        for y in (0..lb).rev() {
            for x in 0..la {
                s.push(match owner[x * lb + y] {
                    Some(i) => GLYPHS[i % GLYPHS.len()] as char,
                    None => '.',
                });
            }
            s.push('\n');
        }
        s
    }
}

/// Witness reconstructing a packing from a regular configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PackingWitness {
    /// Anchors at `(bx + 2i, by + 2j)` exactly.
    Regular { base: (usize, usize) },
    /// All anchors share x-parity `base.0`; column `i` (anchors at
    /// `x = base.0 + 2i`) is shifted one square in y iff `shifts[i]`.
    ColumnShifted {
        base: (usize, usize),
        shifts: Vec<bool>,
    },
    /// All anchors share y-parity `base.1`; row `j` is shifted in x.
    RowShifted {
        base: (usize, usize),
        shifts: Vec<bool>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PackingClass {
    Classified(PackingWitness),
    Unclassifiable,
}

/// Classify a perfect packing against the regular-plus-shifts structure.
/// `Unclassifiable` never occurs for actual dense packings.
pub fn classify_2d_packing(p: &Packing2D) -> PackingClass {
    let (la, lb) = p.extents();
    if p.anchors().is_empty() {
        return PackingClass::Unclassifiable;
    }
    if let Some(witness) = try_column_structure(p, la, lb) {
        return PackingClass::Classified(witness);
    }
    if let Some(witness) = try_row_structure(p, la, lb) {
        return PackingClass::Classified(witness);
    }
    PackingClass::Unclassifiable
}

fn try_column_structure(p: &Packing2D, la: usize, lb: usize) -> Option<PackingWitness> {
    let bx = p.anchors()[0].0 % 2;
    if p.anchors().iter().any(|&(x, _)| x % 2 != bx) {
        return None;
    }
    // each anchor column x = bx + 2i must hold exactly lb/2 anchors whose
    // y coordinates all share one parity
    let mut col_parity = vec![None::<usize>; la / 2];
    let mut col_count = vec![0usize; la / 2];
    for &(x, y) in p.anchors() {
        let i = (x - bx) / 2;
        match col_parity[i] {
            None => col_parity[i] = Some(y % 2),
            Some(par) if par != y % 2 => return None,
            _ => {}
        }
        col_count[i] += 1;
    }
    if col_count.iter().any(|&c| c != lb / 2) {
        return None;
    }
    let by = col_parity[0].unwrap();
    let shifts: Vec<bool> = col_parity
        .iter()
        .map(|par| par.unwrap() != by)
        .collect();
    if shifts.iter().all(|&s| !s) {
        Some(PackingWitness::Regular { base: (bx, by) })
    } else {
        Some(PackingWitness::ColumnShifted {
            base: (bx, by),
            shifts,
        })
    }
}

fn try_row_structure(p: &Packing2D, la: usize, lb: usize) -> Option<PackingWitness> {
    let by = p.anchors()[0].1 % 2;
    if p.anchors().iter().any(|&(_, y)| y % 2 != by) {
        return None;
    }
    let mut row_parity = vec![None::<usize>; lb / 2];
    let mut row_count = vec![0usize; lb / 2];
    for &(x, y) in p.anchors() {
        let j = (y - by) / 2;
        match row_parity[j] {
            None => row_parity[j] = Some(x % 2),
            Some(par) if par != x % 2 => return None,
            _ => {}
        }
        row_count[j] += 1;
    }
    if row_count.iter().any(|&c| c != la / 2) {
        return None;
    }
    let bx = row_parity[0].unwrap();
    let shifts: Vec<bool> = row_parity
        .iter()
        .map(|par| par.unwrap() != bx)
        .collect();
    if shifts.iter().all(|&s| !s) {
        Some(PackingWitness::Regular { base: (bx, by) })
    } else {
        Some(PackingWitness::RowShifted {
            base: (bx, by),
            shifts,
        })
    }
}

/// Complete enumeration of all perfect 2×2 packings of the `(la, lb)` torus,
/// by exact cover over the vertices.
pub fn enumerate_2d_packings(la: usize, lb: usize) -> Result<Vec<Packing2D>, PackingError> {
    for l in [la, lb] {
        if l < 4 || l % 2 != 0 {
            return Err(PackingError::InvalidExtent(l));
        }
        if l > MAX_PACKING_EXTENT {
            return Err(PackingError::ExtentTooLarge(l));
        }
    }
    let cell = |x: usize, y: usize| x * lb + y;
    let mut ec = ExactCover::new(la * lb);
    let mut anchor_of_option = Vec::with_capacity(la * lb);
    for x in 0..la {
        for y in 0..lb {
            let mut items = vec![
                cell(x, y),
                cell((x + 1) % la, y),
                cell(x, (y + 1) % lb),
                cell((x + 1) % la, (y + 1) % lb),
            ];
            items.sort_unstable();
            ec.add_option(&items);
            anchor_of_option.push((x, y));
        }
    }
    let mut out = Vec::new();
    ec.enumerate(&mut |options| {
        let anchors = options.iter().map(|&o| anchor_of_option[o]).collect();
        out.push(Packing2D::new((la, lb), anchors));
        ControlFlow::Continue(())
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn regular(la: usize, lb: usize, bx: usize, by: usize) -> Packing2D {
        let mut anchors = Vec::new();
        for i in 0..la / 2 {
            for j in 0..lb / 2 {
                anchors.push((bx + 2 * i, by + 2 * j));
            }
        }
        Packing2D::new((la, lb), anchors)
    }

    #[test]
    fn regular_configurations_classify_with_zero_shift() {
        for (bx, by) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let p = regular(4, 4, bx, by);
            assert!(p.is_perfect_packing());
            assert_eq!(
                classify_2d_packing(&p),
                PackingClass::Classified(PackingWitness::Regular { base: (bx, by) })
            );
        }
    }

    #[test]
    fn single_shifted_column_yields_a_column_witness() {
        // shift column i=1 (anchors at x=2) by one square in y
        let mut anchors = Vec::new();
        for j in 0..2 {
            anchors.push((0, 2 * j));
            anchors.push((2, 2 * j + 1));
        }
        let p = Packing2D::new((4, 4), anchors);
        assert!(p.is_perfect_packing());
        assert_eq!(
            classify_2d_packing(&p),
            PackingClass::Classified(PackingWitness::ColumnShifted {
                base: (0, 0),
                shifts: vec![false, true],
            })
        );
    }

    #[test]
    fn enumeration_4x4_matches_the_naive_subset_oracle() {
        let found = enumerate_2d_packings(4, 4).unwrap();
        assert_eq!(found.len(), 12);
        for p in &found {
            assert!(p.is_perfect_packing());
            assert!(matches!(classify_2d_packing(p), PackingClass::Classified(_)));
        }
        // independent oracle: test all 4-subsets of the 16 anchors directly
        let anchors: Vec<(usize, usize)> =
            (0..4).flat_map(|x| (0..4).map(move |y| (x, y))).collect();
        let mut oracle = std::collections::HashSet::new();
        for a in 0..16 {
            for b in (a + 1)..16 {
                for c in (b + 1)..16 {
                    for d in (c + 1)..16 {
                        let p = Packing2D::new(
                            (4, 4),
                            vec![anchors[a], anchors[b], anchors[c], anchors[d]],
                        );
                        if p.is_perfect_packing() {
                            oracle.insert(p);
                        }
                    }
                }
            }
        }
        assert_eq!(oracle.len(), 12);
        let found_set: std::collections::HashSet<_> = found.into_iter().collect();
        assert_eq!(found_set, oracle);
    }

    #[test]
    fn enumeration_counts_stay_below_the_layer_bound() {
        // count ≤ 4(2^{la/2} + 2^{lb/2}); the structural count is
        // 2·2^{la/2} + 2·2^{lb/2} − 4
        for (la, lb, expect) in [(4, 4, 12), (4, 6, 20), (6, 6, 28), (4, 8, 36)] {
            let found = enumerate_2d_packings(la, lb).unwrap();
            assert_eq!(found.len(), expect, "({la},{lb})");
            let bound = 4 * ((1usize << (la / 2)) + (1 << (lb / 2)));
            assert!(found.len() <= bound);
            for p in &found {
                assert!(matches!(classify_2d_packing(p), PackingClass::Classified(_)));
            }
        }
    }

    #[test]
    fn invalid_extents_are_rejected() {
        assert_eq!(
            enumerate_2d_packings(3, 4).unwrap_err(),
            PackingError::InvalidExtent(3)
        );
        assert_eq!(
            enumerate_2d_packings(4, 18).unwrap_err(),
            PackingError::ExtentTooLarge(18)
        );
    }

    #[test]
    fn ascii_grid_shows_every_vertex_once() {
        let p = regular(4, 4, 0, 0);
        let art = p.to_ascii();
        assert_eq!(art.lines().count(), 4);
        assert!(art.lines().all(|l| l.len() == 4));
        assert!(!art.contains('.'));
    }

    #[test]
    fn packing_json_roundtrip() {
        let p = regular(4, 6, 1, 0);
        let json = serde_json::to_string(&p).unwrap();
        let back: Packing2D = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
