//! Toroidal 2-D lattice holding the pheromone field and per-cell agent occupancy.
//!
//! The pheromone field is the colony's societal memory: agents deposit into it
//! and it evaporates multiplicatively every step, so it forgets its distant
//! history over a horizon of roughly `1/k` steps. Neighborhood queries wrap
//! toroidally on both axes.

use std::fmt;
use std::io::{self, Write};

/// Unique agent identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AntId(pub u64);

impl fmt::Display for AntId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Canonical wrapped cell coordinate: `0 <= x < width`, `0 <= y < height`.
///
/// `y` grows northward, matching the domain mapping in [`crate::landscape`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CellCoord {
    pub x: usize,
    pub y: usize,
}

impl fmt::Display for CellCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Moore-neighborhood offsets in compass order N, NE, E, SE, S, SW, W, NW.
pub const MOORE_OFFSETS: [(i64, i64); 8] = [
    (0, 1),
    (1, 1),
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
    (-1, 0),
    (-1, 1),
];

/// Toroidal lattice with a non-negative pheromone density and at most one
/// agent per cell.
#[derive(Clone, Debug)]
pub struct HabitatGrid {
    width: usize,
    height: usize,
    pheromone: Vec<f64>,
    occupancy: Vec<Option<AntId>>,
    deposited: f64,
}

impl HabitatGrid {
    /// Creates an empty grid with zero pheromone everywhere.
    ///
    /// Panics if either dimension is below 3: smaller grids cannot host a
    /// distinct Moore neighborhood and leave agents no room to move.
    pub fn new(width: usize, height: usize) -> Self {
        assert!(
            width >= 3 && height >= 3,
            "habitat must be at least 3x3, got {width}x{height}"
        );
        Self {
            width,
            height,
            pheromone: vec![0.0; width * height],
            occupancy: vec![None; width * height],
            deposited: 0.0,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cell_count(&self) -> usize {
        self.width * self.height
    }

    fn idx(&self, c: CellCoord) -> usize {
        debug_assert!(c.x < self.width && c.y < self.height);
        c.y * self.width + c.x
    }

    /// Canonical coordinate congruent to `(raw_x mod width, raw_y mod height)`.
    /// Total: defined for every `i64` pair.
    pub fn wrap(&self, raw_x: i64, raw_y: i64) -> CellCoord {
        CellCoord {
            x: raw_x.rem_euclid(self.width as i64) as usize,
            y: raw_y.rem_euclid(self.height as i64) as usize,
        }
    }

    /// The 8 wrapped Moore neighbors of `c`, in compass order
    /// N, NE, E, SE, S, SW, W, NW. Distinct whenever both dims are >= 3.
    pub fn moore_neighbors(&self, c: CellCoord) -> [CellCoord; 8] {
        MOORE_OFFSETS.map(|(dx, dy)| self.wrap(c.x as i64 + dx, c.y as i64 + dy))
    }

    pub fn pheromone(&self, c: CellCoord) -> f64 {
        self.pheromone[self.idx(c)]
    }

    /// Adds `amount` of pheromone at `c`. Negative amounts are a logic error.
    pub fn deposit(&mut self, c: CellCoord, amount: f64) {
        assert!(
            amount >= 0.0,
            "pheromone deposit must be non-negative, got {amount}"
        );
        let i = self.idx(c);
        self.pheromone[i] += amount;
        self.deposited += amount;
    }

    /// Multiplies every cell's pheromone by `1 - k`.
    pub fn evaporate(&mut self, k: f64) {
        assert!(
            (0.0..=1.0).contains(&k),
            "evaporation rate must be in [0,1], got {k}"
        );
        let keep = 1.0 - k;
        for sigma in &mut self.pheromone {
            *sigma *= keep;
        }
    }

    /// Sum of pheromone over all cells.
    pub fn total_pheromone(&self) -> f64 {
        self.pheromone.iter().sum()
    }

    /// Cumulative total ever deposited; together with [`Self::total_pheromone`]
    /// this supports exact bookkeeping checks across deposit/evaporate cycles.
    pub fn deposited_total(&self) -> f64 {
        self.deposited
    }

    pub fn is_occupied(&self, c: CellCoord) -> bool {
        self.occupancy[self.idx(c)].is_some()
    }

    pub fn occupant(&self, c: CellCoord) -> Option<AntId> {
        self.occupancy[self.idx(c)]
    }

    /// Marks `c` as occupied by `id`. Occupying a full cell is a logic error.
    pub fn occupy(&mut self, c: CellCoord, id: AntId) {
        let i = self.idx(c);
        assert!(
            self.occupancy[i].is_none(),
            "cell {c} already occupied by {} when placing {id}",
            self.occupancy[i].unwrap()
        );
        self.occupancy[i] = Some(id);
    }

    /// Clears the occupant of `c` and returns it. Vacating an empty cell is a
    /// logic error.
    pub fn vacate(&mut self, c: CellCoord) -> AntId {
        let i = self.idx(c);
        self.occupancy[i]
            .take()
            .unwrap_or_else(|| panic!("vacating empty cell {c}"))
    }

    /// Number of occupied cells among the 8 Moore neighbors of `c`.
    pub fn occupied_neighbor_count(&self, c: CellCoord) -> u8 {
        self.moore_neighbors(c)
            .iter()
            .filter(|&&n| self.is_occupied(n))
            .count() as u8
    }

    pub fn occupied_cells(&self) -> usize {
        self.occupancy.iter().filter(|o| o.is_some()).count()
    }

    /// Writes the pheromone field as a plain (P2) PGM image, linearly rescaled
    /// to 0-255 over the current min/max. A constant field renders as all
    /// zeros. Row 0 of the image is the northernmost row (highest `y`).
    pub fn write_pgm<W: Write>(&self, out: &mut W) -> io::Result<()> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &v in &self.pheromone {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        let span = hi - lo;
        writeln!(out, "P2")?;
        writeln!(out, "{} {}", self.width, self.height)?;
        writeln!(out, "255")?;
        for y in (0..self.height).rev() {
            let mut row = String::with_capacity(self.width * 4);
            for x in 0..self.width {
                let v = self.pheromone[y * self.width + x];
                let g = if span > 0.0 {
                    ((v - lo) / span * 255.0).round() as u32
                } else {
                    0
                };
                if x > 0 {
                    row.push(' ');
                }
                row.push_str(&g.to_string());
            }
            writeln!(out, "{row}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid100() -> HabitatGrid {
        HabitatGrid::new(100, 100)
    }

    #[test]
    fn wrap_interior_point() {
        assert_eq!(grid100().wrap(5, 5), CellCoord { x: 5, y: 5 });
    }

    #[test]
    fn wrap_single_west_edge() {
        assert_eq!(grid100().wrap(-1, 0), CellCoord { x: 99, y: 0 });
    }

    #[test]
    fn wrap_multi_wrap() {
        // 205 mod 100 = 5; -103 mod 100 = 97
        assert_eq!(grid100().wrap(205, -103), CellCoord { x: 5, y: 97 });
    }

    #[test]
    fn wrap_is_total_at_extremes() {
        let g = grid100();
        for &v in &[i64::MIN, i64::MIN + 1, -1, 0, 1, i64::MAX - 1, i64::MAX] {
            let c = g.wrap(v, v);
            assert!(c.x < 100 && c.y < 100);
        }
    }

    #[test]
    fn moore_center_offsets() {
        let g = grid100();
        let c = CellCoord { x: 50, y: 50 };
        let n = g.moore_neighbors(c);
        assert_eq!(n[0], CellCoord { x: 50, y: 51 }); // N
        assert_eq!(n[2], CellCoord { x: 51, y: 50 }); // E
        assert_eq!(n[4], CellCoord { x: 50, y: 49 }); // S
        assert_eq!(n[6], CellCoord { x: 49, y: 50 }); // W
        assert_eq!(n.len(), 8);
    }

    #[test]
    fn moore_corner_wraps() {
        let g = grid100();
        let n = g.moore_neighbors(CellCoord { x: 0, y: 0 });
        assert!(n.contains(&CellCoord { x: 99, y: 99 }));
        assert!(n.contains(&CellCoord { x: 0, y: 99 }));
        assert!(n.contains(&CellCoord { x: 99, y: 0 }));
    }

    #[test]
    fn deposit_accumulates() {
        let mut g = grid100();
        let c = CellCoord { x: 3, y: 4 };
        g.deposit(c, 0.07);
        assert_eq!(g.pheromone(c), 0.07);
        g.deposit(c, 0.0);
        assert_eq!(g.pheromone(c), 0.07);
        let mut g2 = grid100();
        g2.deposit(c, 1.0);
        g2.deposit(c, 1.97);
        assert!((g2.pheromone(c) - 2.97).abs() < 1e-15);
    }

    #[test]
    #[should_panic(expected = "non-negative")]
    fn deposit_rejects_negative() {
        grid100().deposit(CellCoord { x: 0, y: 0 }, -0.1);
    }

    #[test]
    fn evaporate_is_multiplicative() {
        let mut g = grid100();
        let c = CellCoord { x: 1, y: 1 };
        g.deposit(c, 1.0);
        g.evaporate(0.015);
        assert!((g.pheromone(c) - 0.985).abs() < 1e-15);

        let mut g = grid100();
        g.deposit(c, 2.0);
        g.evaporate(0.5);
        g.evaporate(0.5);
        assert!((g.pheromone(c) - 0.5).abs() < 1e-15);

        let mut g = grid100();
        g.deposit(c, 0.3);
        g.evaporate(0.0);
        assert_eq!(g.pheromone(c), 0.3);
    }

    #[test]
    fn occupancy_lifecycle() {
        let mut g = grid100();
        let c = CellCoord { x: 9, y: 9 };
        g.occupy(c, AntId(1));
        assert!(g.is_occupied(c));
        assert_eq!(g.occupant(c), Some(AntId(1)));
        assert_eq!(g.vacate(c), AntId(1));
        assert!(!g.is_occupied(c));
    }

    #[test]
    #[should_panic(expected = "already occupied")]
    fn occupy_twice_is_logic_error() {
        let mut g = grid100();
        let c = CellCoord { x: 0, y: 0 };
        g.occupy(c, AntId(1));
        g.occupy(c, AntId(2));
    }

    #[test]
    #[should_panic(expected = "vacating empty cell")]
    fn vacate_empty_is_logic_error() {
        grid100().vacate(CellCoord { x: 0, y: 0 });
    }

    #[test]
    #[should_panic(expected = "at least 3x3")]
    fn degenerate_grid_rejected() {
        HabitatGrid::new(1, 1);
    }

    #[test]
    fn pgm_snapshot_format() {
        let mut g = HabitatGrid::new(3, 3);
        g.deposit(CellCoord { x: 0, y: 0 }, 1.0);
        g.deposit(CellCoord { x: 2, y: 2 }, 0.5);
        let mut buf = Vec::new();
        g.write_pgm(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        // north row (y=2) first; 0.5 maps to 128, 1.0 to 255
        assert_eq!(text, "P2\n3 3\n255\n0 0 128\n0 0 0\n255 0 0\n");
    }

    #[test]
    fn pgm_constant_field_is_black() {
        let g = HabitatGrid::new(3, 3);
        let mut buf = Vec::new();
        g.write_pgm(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "P2\n3 3\n255\n0 0 0\n0 0 0\n0 0 0\n");
    }

    proptest! {
        #[test]
        fn wrap_total_and_canonical(x in any::<i64>(), y in any::<i64>(), w in 3usize..64, h in 3usize..64) {
            let g = HabitatGrid::new(w, h);
            let c = g.wrap(x, y);
            prop_assert!(c.x < w && c.y < h);
        }

        #[test]
        fn moore_all_distinct(x in 0usize..40, y in 0usize..40, w in 3usize..41, h in 3usize..41) {
            let g = HabitatGrid::new(w, h);
            let c = g.wrap(x as i64, y as i64);
            let n = g.moore_neighbors(c);
            for i in 0..8 {
                for j in (i + 1)..8 {
                    prop_assert_ne!(n[i], n[j]);
                }
                prop_assert_ne!(n[i], c);
            }
        }

        #[test]
        fn pheromone_never_negative(ops in prop::collection::vec((0usize..25, 0.0f64..2.0, 0.0f64..1.0), 1..60)) {
            let mut g = HabitatGrid::new(5, 5);
            for (cell, amount, k) in ops {
                g.deposit(CellCoord { x: cell % 5, y: cell / 5 }, amount);
                g.evaporate(k);
                let all_non_negative =
                    (0..5).all(|x| (0..5).all(|y| g.pheromone(CellCoord { x, y }) >= 0.0));
                prop_assert!(all_non_negative);
            }
        }
    }
}
