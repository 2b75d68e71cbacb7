//! Order abstraction used by every kernel.
//!
//! Kernels only ever ask "is `a <= b`?". Wrapping an order in [`Counting`]
//! tallies those questions without touching kernel code.

pub trait Order<T> {
    fn le(&mut self, a: &T, b: &T) -> bool;
}

/// The element type's own `Ord`.
#[derive(Debug, Default, Clone, Copy)]
pub struct Natural;

impl<T: Ord> Order<T> for Natural {
    #[inline(always)]
    fn le(&mut self, a: &T, b: &T) -> bool {
        a <= b
    }
}

/// An order given by a less-or-equal closure.
pub struct ByLe<F>(pub F);

impl<T, F: FnMut(&T, &T) -> bool> Order<T> for ByLe<F> {
    #[inline(always)]
    fn le(&mut self, a: &T, b: &T) -> bool {
        (self.0)(a, b)
    }
}

/// Counts every comparison answered by the wrapped order.
#[derive(Debug, Default, Clone)]
pub struct Counting<O> {
    pub inner: O,
    pub count: u64,
}

impl<O> Counting<O> {
    pub fn new(inner: O) -> Self {
        Counting { inner, count: 0 }
    }
}

impl<T, O: Order<T>> Order<T> for Counting<O> {
    #[inline(always)]
    fn le(&mut self, a: &T, b: &T) -> bool {
        self.count += 1;
        self.inner.le(a, b)
    }
}

impl<T, O: Order<T> + ?Sized> Order<T> for &mut O {
    #[inline(always)]
    fn le(&mut self, a: &T, b: &T) -> bool {
        (**self).le(a, b)
    }
}
