pub mod exactnum;
pub mod rootsys;
pub mod group;
pub mod weylgrp;
pub mod pincover;
pub mod chartab;
pub mod elliptic;
pub mod residues;
