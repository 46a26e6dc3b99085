//! The lattice of flats of a matroid, with its Möbius function and the
//! three-argument J-function.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset;

/// Lattice of flats. Flats are stored sorted by (rank, mask); index 0 is the
/// bottom flat (closure of the empty set) and the last index is the top.
/// Möbius values are filled eagerly; the J-table is built once on demand.
#[derive(Debug)]
pub struct FlatLattice {
    rank_m: u32,
    flats: Vec<u64>,
    ranks: Vec<u32>,
    index_of: HashMap<u64, usize>,
    mobius: Vec<Vec<i64>>,
    j_table: OnceLock<HashMap<(usize, usize, usize), i64>>,
}

impl FlatLattice {
    /// Enumerate the flats of a matroid by closing upward from the bottom
    /// flat. Polymatroids are rejected.
    pub fn new(m: &Matroid) -> Result<FlatLattice> {
        if m.is_polymatroid() {
            return Err(Error::PolymatroidUnsupported("flat_lattice"));
        }
        let bottom = m.closure(0)?;
        let mut seen: HashSet<u64> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(bottom);
        queue.push_back(bottom);
        while let Some(flat) = queue.pop_front() {
            for e in m.ground().elements() {
                if flat & (1 << e) != 0 {
                    continue;
                }
                let next = m.closure(flat | (1 << e))?;
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        let mut flats: Vec<u64> = seen.into_iter().collect();
        flats.sort_by_key(|&f| (m.rank_unchecked(f), f));
        let ranks: Vec<u32> = flats.iter().map(|&f| m.rank_unchecked(f)).collect();
        let index_of: HashMap<u64, usize> =
            flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();

        let count = flats.len();
        let mut mobius = vec![vec![0i64; count]; count];
        for i in 0..count {
            mobius[i][i] = 1;
            // flats are sorted by rank, so every z in [i, j) precedes j
            for j in (i + 1)..count {
                if flats[i] & !flats[j] != 0 {
                    continue;
                }
                let mut sum = 0i64;
                for z in i..j {
                    if flats[i] & !flats[z] == 0 && flats[z] & !flats[j] == 0 {
                        sum += mobius[i][z];
                    }
                }
                mobius[i][j] = -sum;
            }
        }

        Ok(FlatLattice {
            rank_m: m.rank_m(),
            flats,
            ranks,
            index_of,
            mobius,
            j_table: OnceLock::new(),
        })
    }

    pub fn num_flats(&self) -> usize {
        self.flats.len()
    }

    pub fn flats(&self) -> &[u64] {
        &self.flats
    }

    pub fn rank_m(&self) -> u32 {
        self.rank_m
    }

    pub fn rank_of_index(&self, i: usize) -> u32 {
        self.ranks[i]
    }

    pub fn corank_of_index(&self, i: usize) -> u32 {
        self.rank_m - self.ranks[i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    pub fn index_of_flat(&self, mask: u64) -> Option<usize> {
        self.index_of.get(&mask).copied()
    }

    /// Containment order on flat indices.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.flats[i] & !self.flats[j] == 0
    }

    /// Möbius value on a comparable pair of flats given by masks.
    pub fn mobius(&self, x: u64, y: u64) -> Result<i64> {
        let i = self
            .index_of_flat(x)
            .ok_or_else(|| Error::Domain(format!("{} is not a flat", subset::format_set(x))))?;
        let j = self
            .index_of_flat(y)
            .ok_or_else(|| Error::Domain(format!("{} is not a flat", subset::format_set(y))))?;
        self.mobius_by_index(i, j)
    }

    /// Möbius value on a comparable pair of flat indices. An incomparable
    /// pair is a domain error, not zero.
    pub fn mobius_by_index(&self, i: usize, j: usize) -> Result<i64> {
        if !self.leq(i, j) {
            return Err(Error::Domain(format!(
                "mobius on an incomparable pair: {} vs {}",
                subset::format_set(self.flats[i]),
                subset::format_set(self.flats[j])
            )));
        }
        Ok(self.mobius[i][j])
    }

    /// J-function value on a 3-flag of flats given by masks.
    pub fn j_function(&self, x: u64, y: u64, z: u64) -> Result<i64> {
        let lookup = |mask: u64| {
            self.index_of_flat(mask)
                .ok_or_else(|| Error::Domain(format!("{} is not a flat", subset::format_set(mask))))
        };
        self.j_by_index(lookup(x)?, lookup(y)?, lookup(z)?)
    }

    /// J-function on flat indices; `(x, y, z)` must be a flag `x <= y <= z`.
    pub fn j_by_index(&self, x: usize, y: usize, z: usize) -> Result<i64> {
        if !(self.leq(x, y) && self.leq(y, z)) {
            return Err(Error::Domain(format!(
                "j_function needs a flag, got {}, {}, {}",
                subset::format_set(self.flats[x]),
                subset::format_set(self.flats[y]),
                subset::format_set(self.flats[z])
            )));
        }
        Ok(self.j_table()[&(x, y, z)])
    }

    /// All flags `(x, y, z)` with `x <= y <= z`, with J values.
    pub fn j_table(&self) -> &HashMap<(usize, usize, usize), i64> {
        self.j_table.get_or_init(|| self.build_j_table())
    }

    /// Solve the defining system: J(x,x,x) = 1 and for every flag (x,y,z)
    /// the sum of J(a,y,b) over x <= a <= y <= b <= z equals delta(x=y=z).
    /// Isolating the (a,b) = (x,z) term expresses each value through flags
    /// of strictly smaller span, so filling by increasing span terminates.
    fn build_j_table(&self) -> HashMap<(usize, usize, usize), i64> {
        let count = self.flats.len();
        let mut flags: Vec<(usize, usize, usize)> = Vec::new();
        for x in 0..count {
            for y in x..count {
                if !self.leq(x, y) {
                    continue;
                }
                for z in y..count {
                    if self.leq(y, z) {
                        flags.push((x, y, z));
                    }
                }
            }
        }
        flags.sort_by_key(|&(x, _, z)| self.ranks[z] - self.ranks[x]);

        let mut table: HashMap<(usize, usize, usize), i64> = HashMap::with_capacity(flags.len());
        for &(x, y, z) in &flags {
            let delta = i64::from(x == y && y == z);
            let mut inner = 0i64;
            for a in x..=y {
                if !(self.leq(x, a) && self.leq(a, y)) {
                    continue;
                }
                for b in y..=z {
                    if (a, b) == (x, z) || !(self.leq(y, b) && self.leq(b, z)) {
                        continue;
                    }
                    inner += table[&(a, y, b)];
                }
            }
            table.insert((x, y, z), delta - inner);
        }
        table
    }
}
