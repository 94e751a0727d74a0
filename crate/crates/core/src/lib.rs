//! Maximum-weight spanning trees, smallest enclosing circles, and checks that
//! the enclosing-circle center pierces every diametral disk of the tree.
//!
//! Each construction ships with an independent brute-force oracle
//! ([`spanning::enumerate_best_tree_weight`], [`enclosing::sec_bruteforce`],
//! [`fingerhut::max_weight_matching_bruteforce`]) so results can be
//! cross-checked at small sizes.

pub mod enclosing;
pub mod error;
pub mod fingerhut;
pub mod generate;
pub mod geom;
pub mod io;
pub mod piercing;
pub mod spanning;
pub mod svg;

pub use generate::{generate, generate_trial, Generator, RunConfig};
pub use enclosing::{enclosing_circle_of, sec_bruteforce, smallest_enclosing_circle, Enclosing, SupportSet};
pub use error::{Error, Result};
pub use geom::{angle_at, circumcircle, dist, in_diametral_disk, Circle, Disk, Edge, Point, Tolerance};
pub use piercing::{verify_piercing, PiercingReport};
pub use spanning::{enumerate_best_tree_weight, max_spanning_tree, verify_max_tree, Instance, Tree};
