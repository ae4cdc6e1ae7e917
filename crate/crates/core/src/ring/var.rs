//! Symbolic generators.
//!
//! A generator is a name with an optional integer index, e.g. `alpha[-2]`,
//! `x`, or `y[1]`. Generators are interned process-wide so that monomials
//! can refer to them by a small integer. The interning order is an internal
//! detail: every user-visible ordering (printing, normalization of
//! denominators) sorts by `(name, index)` instead.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

/// An interned symbolic generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub(crate) u32);

#[derive(Default)]
struct Interner {
    names: Vec<(String, Option<i64>)>,
    lookup: HashMap<(String, Option<i64>), u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static CELL: OnceLock<RwLock<Interner>> = OnceLock::new();
    CELL.get_or_init(|| RwLock::new(Interner::default()))
}

impl Var {
    /// The generator with the given name and optional index.
    pub fn new(name: &str, index: Option<i64>) -> Var {
        let key = (name.to_string(), index);
        if let Some(&v) = interner().read().expect("interner poisoned").lookup.get(&key) {
            return Var(v);
        }
        let mut w = interner().write().expect("interner poisoned");
        if let Some(&v) = w.lookup.get(&key) {
            return Var(v);
        }
        let id = u32::try_from(w.names.len()).expect("too many generators");
        w.names.push(key.clone());
        w.lookup.insert(key, id);
        Var(id)
    }

    /// An unindexed generator.
    pub fn named(name: &str) -> Var {
        Var::new(name, None)
    }

    /// An indexed generator `name[index]`.
    pub fn indexed(name: &str, index: i64) -> Var {
        Var::new(name, Some(index))
    }

    /// Parses `name` or `name[index]`.
    pub fn parse(s: &str) -> Option<Var> {
        let s = s.trim();
        if let Some(open) = s.find('[') {
            let close = s.strip_suffix(']')?;
            let name = &s[..open];
            let idx: i64 = close[open + 1..].trim().parse().ok()?;
            if !valid_name(name) {
                return None;
            }
            Some(Var::indexed(name, idx))
        } else if valid_name(s) {
            Some(Var::named(s))
        } else {
            None
        }
    }

    /// Name and index of this generator.
    pub fn key(self) -> (String, Option<i64>) {
        interner().read().expect("interner poisoned").names[self.0 as usize].clone()
    }

    /// Compares two generators by `(name, index)`, the user-visible order.
    pub fn display_cmp(self, other: Var) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let g = interner().read().expect("interner poisoned");
        let a = &g.names[self.0 as usize];
        let b = &g.names[other.0 as usize];
        a.0.cmp(&b.0).then(a.1.cmp(&b.1))
    }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, idx) = self.key();
        match idx {
            Some(i) => write!(f, "{name}[{i}]"),
            None => write!(f, "{name}"),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
