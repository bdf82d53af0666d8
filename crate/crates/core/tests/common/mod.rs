#![allow(dead_code)]

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub mod oracle;
pub mod worked;

use fgaction::document::LoadedAction;
use fgaction::GroupAction;

pub fn fixture(name: &str) -> LoadedAction {
    fgaction::fixtures::load(name).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

pub fn action(name: &str) -> GroupAction {
    fixture(name).action
}
