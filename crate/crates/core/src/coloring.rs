//! Finite colorings of windows and their text file format.
//!
//! ```text
//! ring Z
//! window N=10
//! colors 2
//! 1 2 1 2 1 2 1 2 1 2
//! ```
//!
//! Colors are 1-based and listed in canonical window order, at most
//! [`COLORS_PER_LINE`] per line, single spaces, LF line ends, one trailing
//! newline.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

use crate::ring::{Domain, RingError, RingSpec, Window, WindowParams};
use crate::rng;

pub const COLORS_PER_LINE: usize = 40;

#[derive(Debug, Error)]
pub enum ColoringError {
    #[error("color count must be at least 1")]
    NoColors,
    #[error("color {color} at position {position} is outside 1..={r}")]
    ColorOutOfRange { position: usize, color: u32, r: u32 },
    #[error("color index {0} is outside 1..={1}")]
    ClassOutOfRange(u32, u32),
    #[error("expected {expected} colors, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("malformed coloring file: {0}")]
    Malformed(String),
    #[error("file is for ring {found}, expected {expected}")]
    RingMismatch { expected: RingSpec, found: RingSpec },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A dense assignment of colors `1..=r` to the positions of a window.
#[derive(Debug, Clone)]
pub struct Coloring<R: Domain> {
    window: Arc<Window<R>>,
    r: u32,
    colors: Vec<u32>,
}

impl<R: Domain> PartialEq for Coloring<R> {
    fn eq(&self, other: &Self) -> bool {
        self.window.same_as(&other.window) && self.r == other.r && self.colors == other.colors
    }
}

impl<R: Domain> Coloring<R> {
    pub fn new(window: Arc<Window<R>>, r: u32, colors: Vec<u32>) -> Result<Self, ColoringError> {
        if r == 0 {
            return Err(ColoringError::NoColors);
        }
        if colors.len() != window.len() {
            return Err(ColoringError::WrongCount { expected: window.len(), found: colors.len() });
        }
        if let Some((position, &color)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > r) {
            return Err(ColoringError::ColorOutOfRange { position, color, r });
        }
        Ok(Coloring { window, r, colors })
    }

    /// Colors each element by `f`, which must return values in `1..=r`.
    pub fn from_fn(window: Arc<Window<R>>, r: u32, mut f: impl FnMut(&R::Elem) -> u32) -> Result<Self, ColoringError> {
        let colors = window.elements().iter().map(&mut f).collect();
        Coloring::new(window, r, colors)
    }

    pub fn constant(window: Arc<Window<R>>, r: u32) -> Result<Self, ColoringError> {
        let n = window.len();
        Coloring::new(window, r, vec![1; n])
    }

    /// Position `k` receives color `1 + bounded(output_at(seed, k), r)`; see
    /// [`crate::rng`].
    pub fn random(window: Arc<Window<R>>, r: u32, seed: u64) -> Result<Self, ColoringError> {
        if r == 0 {
            return Err(ColoringError::NoColors);
        }
        let colors =
            (0..window.len() as u64).map(|k| 1 + rng::bounded(rng::output_at(seed, k), r as u64) as u32).collect();
        Coloring::new(window, r, colors)
    }

    pub fn window(&self) -> &Arc<Window<R>> {
        &self.window
    }

    pub fn num_colors(&self) -> u32 {
        self.r
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color_at(&self, position: usize) -> u32 {
        self.colors[position]
    }

    /// Color of `e`, or `None` when `e` lies outside the window.
    pub fn color_of(&self, e: &R::Elem) -> Option<u32> {
        self.window.index_of(e).map(|k| self.colors[k])
    }

    /// The class `C_i`, in window order.
    pub fn color_class(&self, i: u32) -> Result<Vec<R::Elem>, ColoringError> {
        if i == 0 || i > self.r {
            return Err(ColoringError::ClassOutOfRange(i, self.r));
        }
        Ok(self.window.elements().iter().zip(&self.colors).filter(|(_, &c)| c == i).map(|(e, _)| e.clone()).collect())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let ring = self.window.ring();
        writeln!(out, "ring {}", ring.spec()).unwrap();
        writeln!(out, "window {}", self.window.params()).unwrap();
        writeln!(out, "colors {}", self.r).unwrap();
        for chunk in self.colors.chunks(COLORS_PER_LINE) {
            let line: Vec<String> = chunk.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses a coloring file, rebuilding the window it names over `ring`.
    pub fn from_text(ring: R, text: &str) -> Result<Self, ColoringError> {
        let header = ColoringHeader::parse(text)?;
        if header.ring != ring.spec() {
            return Err(ColoringError::RingMismatch { expected: ring.spec(), found: header.ring });
        }
        let window = Arc::new(Window::new(ring, header.window)?);
        let colors = text
            .lines()
            .skip(3)
            .flat_map(str::split_whitespace)
            .map(|tok| tok.parse::<u32>().map_err(|_| ColoringError::Malformed(format!("bad color entry `{tok}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        Coloring::new(window, header.r, colors)
    }

    pub fn store(&self, path: impl AsRef<Path>) -> Result<(), ColoringError> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(ring: R, path: impl AsRef<Path>) -> Result<Self, ColoringError> {
        Coloring::from_text(ring, &std::fs::read_to_string(path)?)
    }
}

/// The three header lines of a coloring file. Read first so callers can
/// pick the ring before parsing the body.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColoringHeader {
    pub ring: RingSpec,
    pub window: WindowParams,
    pub r: u32,
}

impl ColoringHeader {
    pub fn parse(text: &str) -> Result<Self, ColoringError> {
        let mut lines = text.lines();
        let mut field = |key: &str| -> Result<String, ColoringError> {
            let line = lines.next().ok_or_else(|| ColoringError::Malformed(format!("missing `{key}` line")))?;
            line.strip_prefix(key)
                .and_then(|rest| rest.strip_prefix(' '))
                .map(str::to_string)
                .ok_or_else(|| ColoringError::Malformed(format!("expected `{key} ...`, found `{line}`")))
        };
        let ring = field("ring")?.parse()?;
        let window = field("window")?.parse()?;
        let r = field("colors")?.parse().map_err(|_| ColoringError::Malformed("bad color count".into()))?;
        if r == 0 {
            return Err(ColoringError::NoColors);
        }
        Ok(ColoringHeader { ring, window, r })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, PolyOverPrimeField};

    fn z_window(n: u64) -> Arc<Window<Integers>> {
        Arc::new(Window::new(Integers, WindowParams::n(n)).unwrap())
    }

    #[test]
    fn random_is_deterministic_and_in_range() {
        let w = z_window(200);
        let a = Coloring::random(w.clone(), 3, 99).unwrap();
        let b = Coloring::random(w.clone(), 3, 99).unwrap();
        assert_eq!(a, b);
        assert!(a.colors().iter().all(|&c| (1..=3).contains(&c)));
        assert_ne!(a, Coloring::random(w.clone(), 3, 100).unwrap());
        let one = Coloring::random(w.clone(), 1, 5).unwrap();
        assert!(one.colors().iter().all(|&c| c == 1));
        assert!(matches!(Coloring::random(w, 0, 5), Err(ColoringError::NoColors)));
    }

    #[test]
    fn classes() {
        let w = z_window(10);
        let all_one = Coloring::constant(w.clone(), 2).unwrap();
        assert_eq!(all_one.color_class(1).unwrap().len(), 10);
        assert!(all_one.color_class(2).unwrap().is_empty());
        assert!(all_one.color_class(3).is_err());
        let parity = Coloring::from_fn(w, 2, |e| 1 + u32::from(e.bit(0))).unwrap();
        let evens: Vec<i64> = parity.color_class(1).unwrap().iter().map(|e| i64::try_from(e).unwrap()).collect();
        assert_eq!(evens, vec![2, 4, 6, 8, 10]);
    }

    #[test]
    fn text_format_is_exact() {
        let w = z_window(3);
        let c = Coloring::new(w, 2, vec![1, 2, 2]).unwrap();
        assert_eq!(c.to_text(), "ring Z\nwindow N=3\ncolors 2\n1 2 2\n");
        let long = Coloring::random(z_window(85), 2, 1).unwrap();
        let text = long.to_text();
        assert_eq!(text.lines().count(), 3 + 3);
        assert!(text.ends_with('\n') && !text.ends_with("\n\n"));
        assert!(text.lines().all(|l| !l.ends_with(' ')));
    }

    #[test]
    fn load_errors() {
        let z = Integers;
        let ok = "ring Z\nwindow N=3\ncolors 2\n1 2 2\n";
        assert!(Coloring::from_text(z, ok).is_ok());
        assert!(matches!(
            Coloring::from_text(z, "ring Z\nwindow N=3\ncolors 2\n1 2\n"),
            Err(ColoringError::WrongCount { expected: 3, found: 2 })
        ));
        assert!(matches!(
            Coloring::from_text(z, "ring Z\nwindow N=3\ncolors 2\n1 0 2\n"),
            Err(ColoringError::ColorOutOfRange { position: 1, color: 0, .. })
        ));
        assert!(matches!(
            Coloring::from_text(z, "ring Z\nwindow N=3\ncolors 2\n1 3 2\n"),
            Err(ColoringError::ColorOutOfRange { color: 3, .. })
        ));
        assert!(matches!(
            Coloring::from_text(z, "rings Z\nwindow N=3\ncolors 2\n1 1 2\n"),
            Err(ColoringError::Malformed(_))
        ));
        assert!(matches!(
            Coloring::from_text(z, "ring Zi\nwindow B=0\ncolors 2\n1\n"),
            Err(ColoringError::RingMismatch { .. })
        ));
    }

    #[test]
    fn poly_round_trip() {
        let gf = PolyOverPrimeField::new(3).unwrap();
        let w = Arc::new(Window::new(gf, WindowParams::D(4)).unwrap());
        let c = Coloring::random(w, 4, 17).unwrap();
        let back = Coloring::from_text(gf, &c.to_text()).unwrap();
        assert_eq!(back, c);
    }
}
