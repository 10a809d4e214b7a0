use std::collections::{BTreeMap, BTreeSet};

/// A finite union of half-open unit squares `[i, i+1) x [j, j+1)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GridRegion {
    squares: BTreeSet<(i64, i64)>,
}

impl GridRegion {
    pub fn new<I: IntoIterator<Item = (i64, i64)>>(squares: I) -> Self {
        Self {
            squares: squares.into_iter().collect(),
        }
    }

    /// Squares covering `[a, b) x [c, d)`.
    pub fn rectangle(a: i64, b: i64, c: i64, d: i64) -> Self {
        let mut squares = BTreeSet::new();
        for i in a..b {
            for j in c..d {
                squares.insert((i, j));
            }
        }
        Self { squares }
    }

    pub fn contains(&self, i: i64, j: i64) -> bool {
        self.squares.contains(&(i, j))
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn squares(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.squares.iter().copied()
    }

    pub fn as_set(&self) -> &BTreeSet<(i64, i64)> {
        &self.squares
    }

    /// `[NE] - [NW] - [SE] + [SW]` around the lattice point `(i, j)`: the
    /// signed vertex weight obtained by adding up rectangle corners square by square.
    pub fn vertex_weight(&self, i: i64, j: i64) -> i32 {
        let at = |a: i64, b: i64| self.contains(a, b) as i32;
        at(i, j) - at(i - 1, j) - at(i, j - 1) + at(i - 1, j - 1)
    }
}

impl FromIterator<(i64, i64)> for GridRegion {
    fn from_iter<T: IntoIterator<Item = (i64, i64)>>(iter: T) -> Self {
        Self::new(iter)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    East,
    North,
    West,
    South,
}

impl Direction {
    fn step(self) -> (i64, i64) {
        match self {
            Direction::East => (1, 0),
            Direction::North => (0, 1),
            Direction::West => (-1, 0),
            Direction::South => (0, -1),
        }
    }

    fn left(self) -> Self {
        match self {
            Direction::East => Direction::North,
            Direction::North => Direction::West,
            Direction::West => Direction::South,
            Direction::South => Direction::East,
        }
    }

    fn right(self) -> Self {
        self.left().left().left()
    }

    pub fn is_horizontal(self) -> bool {
        matches!(self, Direction::East | Direction::West)
    }
}

/// A unit boundary segment starting at a lattice point, with the region on its left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub start: (i64, i64),
    pub dir: Direction,
}

impl Edge {
    pub fn end(&self) -> (i64, i64) {
        let (dx, dy) = self.dir.step();
        (self.start.0 + dx, self.start.1 + dy)
    }

    /// Lower-left lattice point of the segment.
    pub fn low(&self) -> (i64, i64) {
        let e = self.end();
        (self.start.0.min(e.0), self.start.1.min(e.1))
    }

    /// Orientation factor of the edge in the line term: `-` for eastward
    /// `dx`, `+` for westward `dx`, `+` for northward `dy`, `-` for southward `dy`.
    pub fn line_sign(&self) -> f64 {
        match self.dir {
            Direction::East | Direction::South => -1.0,
            Direction::West | Direction::North => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Corner {
    pub i: i64,
    pub j: i64,
    /// `+1` for a vertical-to-horizontal turn, `-1` for horizontal-to-vertical.
    pub sign: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryLoop {
    pub edges: Vec<Edge>,
    pub corners: Vec<Corner>,
    /// Clockwise loop around a hole.
    pub is_hole: bool,
}

impl BoundaryLoop {
    /// Twice the signed area enclosed (positive when counterclockwise).
    pub fn signed_area2(&self) -> i64 {
        self.edges
            .iter()
            .map(|e| {
                let (a, b) = (e.start, e.end());
                a.0 * b.1 - b.0 * a.1
            })
            .sum()
    }

    pub fn signs_alternate(&self) -> bool {
        let n = self.corners.len();
        n.is_multiple_of(2)
            && (0..n).all(|k| self.corners[k].sign != self.corners[(k + 1) % n].sign)
    }
}

/// Oriented boundary of a [`GridRegion`]: counterclockwise outer loops,
/// clockwise hole loops.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundaryPath {
    pub loops: Vec<BoundaryLoop>,
}

impl BoundaryPath {
    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.loops.iter().flat_map(|l| l.edges.iter())
    }

    pub fn corners(&self) -> impl Iterator<Item = &Corner> {
        self.loops.iter().flat_map(|l| l.corners.iter())
    }
}

fn boundary_edges(region: &GridRegion) -> BTreeSet<Edge> {
    let mut edges = BTreeSet::new();
    for (i, j) in region.squares() {
        if !region.contains(i, j - 1) {
            edges.insert(Edge {
                start: (i, j),
                dir: Direction::East,
            });
        }
        if !region.contains(i + 1, j) {
            edges.insert(Edge {
                start: (i + 1, j),
                dir: Direction::North,
            });
        }
        if !region.contains(i, j + 1) {
            edges.insert(Edge {
                start: (i + 1, j + 1),
                dir: Direction::West,
            });
        }
        if !region.contains(i - 1, j) {
            edges.insert(Edge {
                start: (i, j + 1),
                dir: Direction::South,
            });
        }
    }
    edges
}

/// Walks the boundary of `region` into closed loops. At a vertex shared by
/// two diagonal squares the walk turns left, keeping each loop simple.
pub fn trace_boundary(region: &GridRegion) -> BoundaryPath {
    let all = boundary_edges(region);
    let mut outgoing: BTreeMap<(i64, i64), Vec<Direction>> = BTreeMap::new();
    for e in &all {
        outgoing.entry(e.start).or_default().push(e.dir);
    }
    let mut unused = all.clone();
    let mut loops = Vec::new();
    while let Some(&first) = unused.iter().next() {
        unused.remove(&first);
        let mut edges = vec![first];
        let mut cur = first;
        loop {
            let v = cur.end();
            let options = outgoing.get(&v).map(Vec::as_slice).unwrap_or(&[]);
            let next = [cur.dir.left(), cur.dir, cur.dir.right()]
                .into_iter()
                .filter(|d| options.contains(d))
                .map(|dir| Edge { start: v, dir })
                .find(|e| unused.contains(e) || *e == first);
            match next {
                Some(e) if e == first => break,
                Some(e) => {
                    unused.remove(&e);
                    edges.push(e);
                    cur = e;
                }
                None => break,
            }
        }
        let n = edges.len();
        let mut corners = Vec::new();
        for k in 0..n {
            let (prev, here) = (edges[(k + n - 1) % n], edges[k]);
            if prev.dir.is_horizontal() != here.dir.is_horizontal() {
                let sign = if here.dir.is_horizontal() { 1 } else { -1 };
                corners.push(Corner {
                    i: here.start.0,
                    j: here.start.1,
                    sign,
                });
            }
        }
        let mut lp = BoundaryLoop {
            edges,
            corners,
            is_hole: false,
        };
        lp.is_hole = lp.signed_area2() < 0;
        loops.push(lp);
    }
    BoundaryPath { loops }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn corner_map(path: &BoundaryPath) -> HashMap<(i64, i64), i32> {
        let mut m = HashMap::new();
        for c in path.corners() {
            *m.entry((c.i, c.j)).or_insert(0) += c.sign;
        }
        m
    }

    #[test]
    fn single_square_corners() {
        let path = trace_boundary(&GridRegion::new([(0, 0)]));
        let m = corner_map(&path);
        assert_eq!(m.len(), 4);
        assert_eq!(m[&(0, 0)], 1);
        assert_eq!(m[&(1, 1)], 1);
        assert_eq!(m[&(0, 1)], -1);
        assert_eq!(m[&(1, 0)], -1);
        assert_eq!(path.loops.len(), 1);
        assert!(!path.loops[0].is_hole);
    }

    #[test]
    fn rectangle_has_only_extreme_corners() {
        let path = trace_boundary(&GridRegion::rectangle(2, 4, -1, 2));
        let m = corner_map(&path);
        assert_eq!(m.len(), 4);
        assert_eq!(
            (m[&(2, -1)], m[&(4, 2)], m[&(2, 2)], m[&(4, -1)]),
            (1, 1, -1, -1)
        );
        assert_eq!(path.edges().count(), 10);
    }

    #[test]
    fn l_shape_alternates() {
        let path = trace_boundary(&GridRegion::new([(0, 0), (1, 0), (0, 1)]));
        assert_eq!(path.loops.len(), 1);
        let lp = &path.loops[0];
        assert_eq!(lp.corners.len(), 6);
        assert!(lp.signs_alternate());
        assert_eq!(corner_map(&path)[&(1, 1)], -1);
    }

    #[test]
    fn ring_has_clockwise_hole() {
        let mut sq: Vec<_> = GridRegion::rectangle(0, 3, 0, 3).squares().collect();
        sq.retain(|&s| s != (1, 1));
        let region = GridRegion::new(sq);
        let path = trace_boundary(&region);
        assert_eq!(path.loops.len(), 2);
        assert_eq!(path.loops.iter().filter(|l| l.is_hole).count(), 1);
        for lp in &path.loops {
            assert!(lp.signs_alternate());
        }
        let m = corner_map(&path);
        for (&(i, j), &s) in &m {
            assert_eq!(s, region.vertex_weight(i, j), "vertex ({i},{j})");
        }
    }

    #[test]
    fn diagonal_pinch_splits_loops() {
        let region = GridRegion::new([(0, 0), (1, 1)]);
        let path = trace_boundary(&region);
        assert_eq!(path.loops.len(), 2);
        assert_eq!(corner_map(&path)[&(1, 1)], region.vertex_weight(1, 1));
        assert_eq!(region.vertex_weight(1, 1), 2);
    }
}
