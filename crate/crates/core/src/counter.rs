//! Per-thread field-operation counters.
//!
//! Every arithmetic call on [`PrimeField`](crate::gf::PrimeField) and
//! [`ExtField`](crate::gf::ExtField) bumps a thread-local tally. Use
//! [`measure`] to attribute the operations of one computation; nested
//! measurements are folded back into the enclosing one.

use std::cell::Cell;
use std::ops::{Add, AddAssign};

/// Operation tallies, split by field.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OpCounts {
    pub base_add: u64,
    pub base_mul: u64,
    pub base_inv: u64,
    pub ext_add: u64,
    pub ext_mul: u64,
    pub ext_inv: u64,
    /// Frobenius applications `a -> a^{q^j}`.
    pub ext_frob: u64,
}

impl OpCounts {
    /// All extension-field operations.
    pub fn ext_total(&self) -> u64 {
        self.ext_add + self.ext_mul + self.ext_inv + self.ext_frob
    }

    pub fn base_total(&self) -> u64 {
        self.base_add + self.base_mul + self.base_inv
    }
}

impl Add for OpCounts {
    type Output = OpCounts;

    fn add(self, o: OpCounts) -> OpCounts {
        OpCounts {
            base_add: self.base_add + o.base_add,
            base_mul: self.base_mul + o.base_mul,
            base_inv: self.base_inv + o.base_inv,
            ext_add: self.ext_add + o.ext_add,
            ext_mul: self.ext_mul + o.ext_mul,
            ext_inv: self.ext_inv + o.ext_inv,
            ext_frob: self.ext_frob + o.ext_frob,
        }
    }
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, o: OpCounts) {
        *self = *self + o;
    }
}

thread_local! {
    static COUNTS: Cell<OpCounts> = Cell::new(OpCounts::default());
}

#[inline]
pub(crate) fn bump(f: impl FnOnce(&mut OpCounts)) {
    COUNTS.with(|c| {
        let mut v = c.get();
        f(&mut v);
        c.set(v);
    });
}

/// Current tallies of this thread.
pub fn snapshot() -> OpCounts {
    COUNTS.with(|c| c.get())
}

/// Runs `f` and returns its result with the operations it performed on the
/// current thread.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, OpCounts) {
    let outer = COUNTS.with(|c| c.replace(OpCounts::default()));
    let out = f();
    let inner = COUNTS.with(|c| c.get());
    COUNTS.with(|c| c.set(outer + inner));
    (out, inner)
}
