//! Dense lookup structure over a [`GraphPatch`] for the hot loops of the
//! path enumerator and the prover.

use alloc::vec;
use alloc::vec::Vec;

use super::{segments_intersect, BBox, Edge, GraphPatch, Point};

/// The eight unit and diagonal step directions, counter-clockwise from +x.
pub const DIRS: [Point; 8] = [
    Point::new(1, 0),
    Point::new(1, 1),
    Point::new(0, 1),
    Point::new(-1, 1),
    Point::new(-1, 0),
    Point::new(-1, -1),
    Point::new(0, -1),
    Point::new(1, -1),
];

pub fn dir_index(d: Point) -> Option<usize> {
    DIRS.iter().position(|x| *x == d)
}

pub const fn is_diagonal(dir: usize) -> bool {
    dir % 2 == 1
}

/// Edges incident to each vertex of the bounding box, as an 8-bit direction
/// mask plus a degree count. Edges longer than a diagonal are kept aside and
/// tested geometrically.
#[derive(Clone, Debug)]
pub struct PatchIndex {
    bbox: Option<BBox>,
    stride: usize,
    masks: Vec<u8>,
    degrees: Vec<u8>,
    long: Vec<Edge>,
}

impl PatchIndex {
    pub fn new(s: &GraphPatch) -> Self {
        let bbox = s.bbox();
        let (stride, cells) = match bbox {
            Some(b) => {
                let w = (b.width() + 1) as usize;
                (w, w * (b.height() + 1) as usize)
            }
            None => (0, 0),
        };
        let mut idx = PatchIndex {
            bbox,
            stride,
            masks: vec![0; cells],
            degrees: vec![0; cells],
            long: Vec::new(),
        };
        for e in s.edges() {
            for p in e.endpoints() {
                let c = idx.cell(p).expect("endpoint inside bbox");
                idx.degrees[c] = idx.degrees[c].saturating_add(1);
            }
            match dir_index(e.b() - e.a()) {
                Some(k) => {
                    let ca = idx.cell(e.a()).unwrap();
                    let cb = idx.cell(e.b()).unwrap();
                    idx.masks[ca] |= 1 << k;
                    idx.masks[cb] |= 1 << ((k + 4) % 8);
                }
                None => idx.long.push(*e),
            }
        }
        idx
    }

    #[inline]
    fn cell(&self, p: Point) -> Option<usize> {
        let b = self.bbox?;
        if !b.contains(p) {
            return None;
        }
        Some((p.y - b.min.y) as usize * self.stride + (p.x - b.min.x) as usize)
    }

    #[inline]
    pub fn mask(&self, p: Point) -> u8 {
        self.cell(p).map_or(0, |c| self.masks[c])
    }

    #[inline]
    pub fn degree(&self, p: Point) -> u32 {
        self.cell(p).map_or(0, |c| self.degrees[c] as u32)
    }

    #[inline]
    pub fn has_step(&self, p: Point, dir: usize) -> bool {
        self.mask(p) & (1 << dir) != 0
    }

    pub fn long_edges(&self) -> &[Edge] {
        &self.long
    }

    pub fn bbox(&self) -> Option<BBox> {
        self.bbox
    }

    /// Whether the short segment `p → p + DIRS[dir]` would intersect an
    /// existing edge other than itself.
    pub fn step_blocked(&self, p: Point, dir: usize) -> bool {
        if is_diagonal(dir) {
            // The only short edge a diagonal can cross is the other diagonal
            // of the same unit square.
            let d = DIRS[dir];
            let corner = Point::new(p.x + d.x, p.y);
            let back = dir_index(Point::new(-d.x, d.y)).unwrap();
            if self.has_step(corner, back) {
                return true;
            }
        }
        if self.long.is_empty() {
            return false;
        }
        let e = Edge::new(p, p + DIRS[dir]).unwrap();
        self.long.iter().any(|l| segments_intersect(l, &e))
    }
}
