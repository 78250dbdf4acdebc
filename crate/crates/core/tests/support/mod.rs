//! Independent reference implementations shared by the test targets.

#![allow(dead_code)]

pub mod bracket;
pub mod closure;
pub mod enumerate;
pub mod hosts;
pub mod matching;
