use super::coord::Coord;
use super::object::{GeomObject, Shape};
use super::predicates::shape_intersects;
use super::GeomError;
use crate::scalar::Scalar;

/// `prod_i [index_i / 2^level, (index_i + 1) / 2^level)`; the side is `2^-level`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadtreeCell {
    pub level: i32,
    pub index: Vec<i64>,
}

fn shr(x: i64, by: i64) -> i64 {
    if by >= 63 {
        x >> 63
    } else {
        x >> by
    }
}

impl QuadtreeCell {
    pub fn side<T: Coord>(&self) -> T {
        T::pow2(-self.level)
    }

    /// Corners of the closed cell.
    pub fn bounds<T: Coord>(&self) -> (Vec<T>, Vec<T>) {
        let s: T = self.side();
        let lo = self.index.iter().map(|&i| T::from_i64(i) * s.clone()).collect();
        let hi = self.index.iter().map(|&i| T::from_i64(i + 1) * s.clone()).collect();
        (lo, hi)
    }

    /// Ancestor at a coarser level (`level <= self.level`).
    pub fn ancestor(&self, level: i32) -> QuadtreeCell {
        let by = i64::from(self.level) - i64::from(level);
        debug_assert!(by >= 0);
        QuadtreeCell { level, index: self.index.iter().map(|&i| shr(i, by)).collect() }
    }

    /// `self` is `other` or one of its ancestors.
    pub fn is_ancestor_of(&self, other: &QuadtreeCell) -> bool {
        other.level >= self.level && other.ancestor(self.level).index == self.index
    }

    pub fn children(&self) -> Vec<QuadtreeCell> {
        let d = self.index.len();
        (0..1usize << d)
            .map(|mask| QuadtreeCell {
                level: self.level + 1,
                index: (0..d).map(|i| 2 * self.index[i] + (mask >> i & 1) as i64).collect(),
            })
            .collect()
    }

    /// Lowest common ancestor.
    pub fn lca(&self, other: &QuadtreeCell) -> QuadtreeCell {
        let mut level = self.level.min(other.level);
        loop {
            let a = self.ancestor(level);
            if a.index == other.ancestor(level).index {
                return a;
            }
            level -= 1;
        }
    }
}

fn contained_at<T: Coord>(lo: &[T], hi: &[T], level: i32) -> Option<QuadtreeCell> {
    let side = T::pow2(-level);
    let mut index = Vec::with_capacity(lo.len());
    for (l, h) in lo.iter().zip(hi) {
        let i = l.floor_div_pow2(-level);
        if h.total_cmp(&(T::from_i64(i + 1) * side.clone())).is_gt() {
            return None;
        }
        index.push(i);
    }
    Some(QuadtreeCell { level, index })
}

/// Smallest closed quadtree cell containing the shape, provided its side is at
/// most `c * diam`; `None` means the shape is not `c`-aligned (or is a point).
pub fn shape_cell_of<T: Coord>(s: &Shape<T>, c: &T) -> Result<Option<QuadtreeCell>, GeomError> {
    let (lo, hi) = s.bbox().ok_or(GeomError::Unbounded)?;
    let diam_sq = s.diameter_sq().ok_or(GeomError::Unbounded)?;
    let mut extent = T::zero();
    for (l, h) in lo.iter().zip(&hi) {
        extent = extent.max_of(h.clone() - l.clone());
    }
    if extent.total_cmp(&T::zero()).is_le() {
        return Ok(None);
    }
    let limit = c.clone() * c.clone() * diam_sq;
    // Finest level whose side is still >= extent.
    let mut level = (-extent.to_f64().log2()).floor() as i32;
    while T::pow2(-level).total_cmp(&extent).is_lt() {
        level -= 1;
    }
    while T::pow2(-(level + 1)).total_cmp(&extent).is_ge() {
        level += 1;
    }
    loop {
        let side = T::pow2(-level);
        if (side.clone() * side).total_cmp(&limit).is_gt() {
            return Ok(None);
        }
        if let Some(cell) = contained_at(&lo, &hi, level) {
            return Ok(Some(cell));
        }
        level -= 1;
    }
}

pub fn quadtree_cell_of(o: &GeomObject, c: &Scalar) -> Result<Option<QuadtreeCell>, GeomError> {
    match o {
        GeomObject::Exact(s) => shape_cell_of(s, c),
        GeomObject::Float { shape, .. } => shape_cell_of(shape, &c.to_f64()),
    }
}

/// Points count as aligned (diameter zero).
pub fn is_c_aligned(o: &GeomObject, c: &Scalar) -> Result<bool, GeomError> {
    let point_like = match o {
        GeomObject::Exact(s) => s.diameter_sq().is_some_and(|d| d.is_zero()),
        GeomObject::Float { shape, .. } => shape.diameter_sq() == Some(0.0),
    };
    Ok(point_like || quadtree_cell_of(o, c)?.is_some())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShiftConfig<T> {
    pub c: T,
    pub shifts: Vec<Vec<T>>,
    pub scale: T,
}

/// `m = 2d + 1` diagonal shifts `j / m * scale * (1, ..., 1)` with `C = 2m`
/// and `scale = 2^ceil(log2 (C * diameter_bound))`.
///
/// An object of extent `r` is misaligned under at most one shift per axis
/// (at the level with side in `(m r, 2 m r]` the shift offsets are `side / m`
/// apart), so any two objects share at least one shift aligning both.
pub fn shift_vectors<T: Coord>(d: usize, diameter_bound: &T) -> ShiftConfig<T> {
    let m = 2 * d as i64 + 1;
    let c = T::from_i64(2 * m);
    let target = c.clone() * diameter_bound.clone();
    let mut e = 0;
    if target.total_cmp(&T::zero()).is_gt() {
        e = target.to_f64().log2().ceil() as i32;
        while T::pow2(e - 1).total_cmp(&target).is_ge() {
            e -= 1;
        }
        while T::pow2(e).total_cmp(&target).is_lt() {
            e += 1;
        }
    }
    let scale = T::pow2(e);
    let shifts = (0..m).map(|j| vec![T::from_frac(j, m) * scale.clone(); d]).collect();
    ShiftConfig { c, shifts, scale }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    Inside,
    Outside,
    Boundary,
}

/// Position of a shape relative to a closed cell. Undecidable pairs are
/// reported as boundary, which is always safe for the callers.
pub fn classify<T: Coord>(s: &Shape<T>, lo: &[T], hi: &[T], eps: f64) -> Placement {
    let Some((bl, bh)) = s.bbox() else { return Placement::Boundary };
    if (0..lo.len()).all(|i| lo[i].total_cmp(&bl[i]).is_le() && bh[i].total_cmp(&hi[i]).is_le()) {
        return Placement::Inside;
    }
    let cell = Shape::AxisBox { lo: lo.to_vec(), hi: hi.to_vec() };
    match shape_intersects(s, &cell, eps, &|_, _| None) {
        Ok(false) => Placement::Outside,
        _ => Placement::Boundary,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CentroidCell {
    pub cell: QuadtreeCell,
    pub inside: Vec<usize>,
    pub outside: Vec<usize>,
    pub boundary: Vec<usize>,
    /// Both counts are at most `alpha * n`.
    pub balanced: bool,
}

/// Centroid cell of the items `items` (indices into `shapes` / `cells`).
///
/// Descends towards the unique child holding more than `alpha n` aligned cells,
/// then picks the child of the stopping cell with the best exact split; some
/// child is always met by at least `n / (2^d + 1)` items.
pub fn centroid_cell_in<T: Coord>(
    items: &[usize],
    shapes: &[Shape<T>],
    cells: &[QuadtreeCell],
    eps: f64,
) -> Result<CentroidCell, GeomError> {
    let n = items.len();
    if n == 0 {
        return Err(GeomError::Empty);
    }
    let d = cells[items[0]].index.len();
    let denom = (1u64 << d) + 1;
    // inside <= alpha n  <=>  inside * (2^d + 1) <= 2^d * n
    let within = |k: usize| (k as u64) * denom <= (1u64 << d) * n as u64;
    let split = |cell: &QuadtreeCell| {
        let (lo, hi) = cell.bounds::<T>();
        let (mut ins, mut out, mut bnd) = (Vec::new(), Vec::new(), Vec::new());
        for &i in items {
            match classify(&shapes[i], &lo, &hi, eps) {
                Placement::Inside => ins.push(i),
                Placement::Outside => out.push(i),
                Placement::Boundary => bnd.push(i),
            }
        }
        (ins, out, bnd)
    };
    if n == 1 {
        let cell = cells[items[0]].clone();
        let (inside, outside, boundary) = split(&cell);
        return Ok(CentroidCell { cell, inside, outside, boundary, balanced: false });
    }

    let mut below: Vec<usize> = items.to_vec();
    let mut cur = below.iter().skip(1).fold(cells[below[0]].clone(), |acc, &i| acc.lca(&cells[i]));
    loop {
        let mut best: Option<(QuadtreeCell, Vec<usize>)> = None;
        for ch in cur.children() {
            let sub: Vec<usize> = below.iter().copied().filter(|&i| ch.is_ancestor_of(&cells[i])).collect();
            if !within(sub.len()) {
                best = Some((ch, sub));
                break;
            }
        }
        match best {
            Some((_, sub)) => {
                cur = sub.iter().skip(1).fold(cells[sub[0]].clone(), |acc, &i| acc.lca(&cells[i]));
                below = sub;
            }
            None => break,
        }
    }

    let mut chosen: Option<(usize, CentroidCell)> = None;
    for ch in cur.children() {
        let (inside, outside, boundary) = split(&ch);
        let worst = inside.len().max(outside.len());
        let balanced = within(inside.len()) && within(outside.len());
        let cand = CentroidCell { cell: ch, inside, outside, boundary, balanced };
        let better = match &chosen {
            None => true,
            Some((w, c)) => (balanced && !c.balanced) || (balanced == c.balanced && worst < *w),
        };
        if better {
            chosen = Some((worst, cand));
        }
        if chosen.as_ref().is_some_and(|(_, c)| c.balanced) {
            break;
        }
    }
    Ok(chosen.expect("a cell has children").1)
}

/// Centroid cell of a list of aligned objects (alignment constant `2 (2d + 1)`).
pub fn centroid_cell(objects: &[GeomObject]) -> Result<CentroidCell, GeomError> {
    let first = objects.first().ok_or(GeomError::Empty)?;
    let d = first.dimension();
    let c = Scalar::int(2 * (2 * d as i64 + 1));
    let items: Vec<usize> = (0..objects.len()).collect();
    match first {
        GeomObject::Exact(_) => {
            let shapes: Vec<Shape<Scalar>> =
                objects.iter().map(|o| o.as_exact().cloned().ok_or(GeomError::MixedModes)).collect::<Result<_, _>>()?;
            let cells = aligned_cells(&shapes, &c)?;
            centroid_cell_in(&items, &shapes, &cells, 0.0)
        }
        GeomObject::Float { eps, .. } => {
            let shapes: Vec<Shape<f64>> = objects
                .iter()
                .map(|o| match o {
                    GeomObject::Float { shape, .. } => Ok(shape.clone()),
                    _ => Err(GeomError::MixedModes),
                })
                .collect::<Result<_, _>>()?;
            let cells = aligned_cells(&shapes, &c.to_f64())?;
            centroid_cell_in(&items, &shapes, &cells, *eps)
        }
    }
}

fn aligned_cells<T: Coord>(shapes: &[Shape<T>], c: &T) -> Result<Vec<QuadtreeCell>, GeomError> {
    shapes
        .iter()
        .map(|s| shape_cell_of(s, c)?.ok_or_else(|| GeomError::Invalid("object is not aligned".into())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64, den: i64) -> Scalar {
        Scalar::frac(v, den)
    }

    #[test]
    fn unit_box_is_aligned() {
        for d in 1..=4 {
            let o = GeomObject::axis_box(&vec![0; d], &vec![1; d]);
            let cell = quadtree_cell_of(&o, &Scalar::ONE).unwrap().unwrap();
            assert_eq!(cell.level, 0);
            assert!(is_c_aligned(&o, &Scalar::ONE).unwrap());
        }
    }

    #[test]
    fn straddling_box_is_not_aligned() {
        let o = GeomObject::exact(Shape::AxisBox { lo: vec![q(6, 10)], hi: vec![q(14, 10)] }).unwrap();
        assert_eq!(quadtree_cell_of(&o, &Scalar::ONE).unwrap(), None);
        // With C = 3 the side-2 cell [0, 2] is allowed.
        let cell = quadtree_cell_of(&o, &Scalar::int(3)).unwrap().unwrap();
        assert_eq!(cell, QuadtreeCell { level: -1, index: vec![0] });
    }

    #[test]
    fn points_always_aligned() {
        assert!(is_c_aligned(&GeomObject::point(&[3, 4]), &Scalar::ONE).unwrap());
        let h = GeomObject::halfspace(&[1, 0], Scalar::ZERO);
        assert_eq!(quadtree_cell_of(&h, &Scalar::ONE), Err(GeomError::Unbounded));
    }

    #[test]
    fn shift_counts() {
        let s = shift_vectors::<Scalar>(1, &Scalar::ONE);
        assert_eq!(s.c, Scalar::int(6));
        assert_eq!(s.scale, Scalar::int(8));
        assert_eq!(s.shifts, vec![vec![Scalar::ZERO], vec![q(8, 3)], vec![q(16, 3)]]);
        let s = shift_vectors::<Scalar>(3, &Scalar::int(3));
        assert_eq!(s.shifts.len(), 7);
        assert_eq!(s.scale, Scalar::int(64));
    }

    #[test]
    fn cell_nesting() {
        let c = QuadtreeCell { level: 3, index: vec![5, -3] };
        let p = c.ancestor(1);
        assert_eq!(p, QuadtreeCell { level: 1, index: vec![1, -1] });
        assert!(p.is_ancestor_of(&c));
        assert!(!c.is_ancestor_of(&p));
        assert_eq!(c.lca(&QuadtreeCell { level: 3, index: vec![4, -4] }), QuadtreeCell { level: 2, index: vec![2, -2] });
        assert_eq!(c.children().len(), 4);
    }

    #[test]
    fn centroid_single_and_clusters() {
        let one = [GeomObject::axis_box(&[0, 0], &[1, 1])];
        let cc = centroid_cell(&one).unwrap();
        assert_eq!(cc.cell, quadtree_cell_of(&one[0], &Scalar::int(6)).unwrap().unwrap());

        let mut objs = Vec::new();
        for i in 0..8 {
            objs.push(GeomObject::axis_box(&[i, 0], &[i + 1, 1]));
            objs.push(GeomObject::axis_box(&[1000 + i, 0], &[1001 + i, 1]));
        }
        let cc = centroid_cell(&objs).unwrap();
        assert!(cc.balanced, "{cc:?}");
        let n = objs.len();
        assert!(cc.inside.len() * 5 <= 4 * n && cc.outside.len() * 5 <= 4 * n);
        assert_eq!(cc.inside.len() + cc.outside.len() + cc.boundary.len(), n);
    }
}
