use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    B,
    EPlus,
    EMinus,
}

/// A basis element of sp(2n). Indices are 1-based; E generators keep `i <= j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub kind: GenKind,
    pub i: u8,
    pub j: u8,
}

/// The five generator classes used by block orders: diagonal B, B above the
/// diagonal, B below it, E+ and E-.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    Diag,
    Upper,
    Lower,
    EPlus,
    EMinus,
}

impl Gen {
    pub fn new(kind: GenKind, i: usize, j: usize) -> Gen {
        let (i, j) = match kind {
            GenKind::B => (i, j),
            _ => (i.min(j), i.max(j)),
        };
        Gen { kind, i: i as u8, j: j as u8 }
    }

    pub fn b(i: usize, j: usize) -> Gen {
        Gen::new(GenKind::B, i, j)
    }

    pub fn eplus(i: usize, j: usize) -> Gen {
        Gen::new(GenKind::EPlus, i, j)
    }

    pub fn eminus(i: usize, j: usize) -> Gen {
        Gen::new(GenKind::EMinus, i, j)
    }

    pub fn i(&self) -> usize {
        self.i as usize
    }

    pub fn j(&self) -> usize {
        self.j as usize
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if self.i == 0 || self.j == 0 || self.i() > n || self.j() > n {
            return Err(Error::IndexOutOfRange(format!("{} at rank {}", self, n)));
        }
        Ok(())
    }

    pub fn block(&self) -> Block {
        match self.kind {
            GenKind::EPlus => Block::EPlus,
            GenKind::EMinus => Block::EMinus,
            GenKind::B => match self.i.cmp(&self.j) {
                Ordering::Equal => Block::Diag,
                Ordering::Less => Block::Upper,
                Ordering::Greater => Block::Lower,
            },
        }
    }

    pub fn is_b(&self) -> bool {
        self.kind == GenKind::B
    }

    /// Position in `Gen::all(n)`.
    pub fn index(&self, n: usize) -> usize {
        let tri = |i: usize, j: usize| (i - 1) * (2 * n + 2 - i) / 2 + (j - i);
        let t = n * (n + 1) / 2;
        match self.kind {
            GenKind::B => (self.i() - 1) * n + self.j() - 1,
            GenKind::EPlus => n * n + tri(self.i(), self.j()),
            GenKind::EMinus => n * n + t + tri(self.i(), self.j()),
        }
    }

    /// All n^2 + n(n+1) generators at rank n.
    pub fn all(n: usize) -> Vec<Gen> {
        let mut out = Vec::with_capacity(2 * n * n + n);
        for i in 1..=n {
            for j in 1..=n {
                out.push(Gen::b(i, j));
            }
        }
        for kind in [GenKind::EPlus, GenKind::EMinus] {
            for i in 1..=n {
                for j in i..=n {
                    out.push(Gen::new(kind, i, j));
                }
            }
        }
        out
    }

    pub fn count(n: usize) -> usize {
        2 * n * n + n
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            GenKind::B => "B",
            GenKind::EPlus => "E+",
            GenKind::EMinus => "E-",
        };
        write!(f, "{}({},{})", name, self.i, self.j)
    }
}

/// A total order on generators: blocks are ranked, ties broken by `(kind, i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenOrder {
    rank: [u8; 5],
}

impl GenOrder {
    pub const HXYPM: GenOrder = GenOrder { rank: [0, 1, 2, 3, 4] };
    pub const PMHXY: GenOrder = GenOrder { rank: [2, 3, 4, 0, 1] };
    /// Diagonal, lowering, raising, E+, E-: raising B's end up rightmost.
    pub const HYXPM: GenOrder = GenOrder { rank: [0, 2, 1, 3, 4] };

    /// Builds an order from blocks listed smallest first.
    pub fn from_blocks(blocks: [Block; 5]) -> Result<GenOrder> {
        let mut rank = [u8::MAX; 5];
        for (r, b) in blocks.iter().enumerate() {
            let slot = &mut rank[*b as usize];
            if *slot != u8::MAX {
                return Err(Error::Invalid(format!("block {:?} listed twice", b)));
            }
            *slot = r as u8;
        }
        Ok(GenOrder { rank })
    }

    pub fn block_rank(&self, b: Block) -> u8 {
        self.rank[b as usize]
    }

    pub fn key(&self, g: &Gen) -> (u8, GenKind, u8, u8) {
        (self.rank[g.block() as usize], g.kind, g.i, g.j)
    }

    pub fn cmp(&self, a: &Gen, b: &Gen) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    pub fn is_sorted(&self, gens: &[Gen]) -> bool {
        gens.windows(2).all(|w| self.cmp(&w[0], &w[1]) != Ordering::Greater)
    }
}

impl FromStr for GenOrder {
    type Err = Error;

    /// Five letters out of `h x y p m`, e.g. `hxypm`.
    fn from_str(s: &str) -> Result<GenOrder> {
        let letters: Vec<char> = s.to_ascii_lowercase().chars().collect();
        if letters.len() != 5 {
            return Err(Error::Invalid(format!("order `{}` needs five letters", s)));
        }
        let mut blocks = [Block::Diag; 5];
        for (slot, c) in blocks.iter_mut().zip(letters) {
            *slot = match c {
                'h' => Block::Diag,
                'x' => Block::Upper,
                'y' => Block::Lower,
                'p' => Block::EPlus,
                'm' => Block::EMinus,
                _ => return Err(Error::Invalid(format!("unknown block letter `{}`", c))),
            };
        }
        GenOrder::from_blocks(blocks)
    }
}
