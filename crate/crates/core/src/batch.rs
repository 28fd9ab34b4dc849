//! Data-parallel batch drivers.
//!
//! With the `parallel` feature (on by default) [`map`] runs on the rayon pool;
//! without it every driver falls back to [`map_seq`]. Results keep input
//! order either way.

use crate::error::Result;
use crate::laws::conjugate_by;
use crate::slicepoly::{SliceClass, SlicePoly};
use crate::zeros::{zero_structure, ZeroStructure};

pub fn map_seq<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_par<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_par(items, f)
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R + Sync + Send,
{
    map_seq(items, f)
}

pub fn classify_all(fs: &[SlicePoly]) -> Vec<Result<SliceClass>> {
    map(fs, SlicePoly::classify)
}

pub fn zero_structures(fs: &[SlicePoly]) -> Vec<Result<ZeroStructure>> {
    map(fs, zero_structure)
}

/// `h * f * h^c` for each `(h, f)`.
pub fn conjugate_all(pairs: &[(SlicePoly, SlicePoly)]) -> Vec<Result<SlicePoly>> {
    map(pairs, |(h, f)| conjugate_by(h, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn parallel_matches_sequential() {
        let mut r = gen::rng(11);
        let fs: Vec<SlicePoly> = (0..64).map(|_| gen::slice_poly(&mut r, 6)).collect();
        let seq = map_seq(&fs, SlicePoly::classify);
        assert_eq!(classify_all(&fs), seq);
    }
}
