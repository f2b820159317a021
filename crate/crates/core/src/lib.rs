//! Exact Lie-theoretic computations for parabolic subgroups of exceptional
//! groups in bad characteristic.

pub mod branching;
pub mod characters;
pub mod chevgroup;
pub mod parabolics;
pub mod rootdata;
pub mod verifier;
pub mod weylgrp;
