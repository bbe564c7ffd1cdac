//! Group names accepted on the command line and in scenario files.

use nonsolv_core::ffmat::{Catalog, CatalogGroup};
use nonsolv_core::perm::named;
use nonsolv_core::{Error, PermGroup, Result};

pub enum Resolved {
    /// `S5`, `A6`, `C7`, `D10`.
    Named(String, PermGroup),
    Catalog(Box<CatalogGroup>),
}

impl Resolved {
    pub fn perm(&self) -> &PermGroup {
        match self {
            Resolved::Named(_, g) => g,
            Resolved::Catalog(c) => &c.perm,
        }
    }

    pub fn catalog(&self) -> Option<&CatalogGroup> {
        match self {
            Resolved::Catalog(c) => Some(c),
            Resolved::Named(..) => None,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Resolved::Named(n, _) => n,
            Resolved::Catalog(c) => &c.spec.name,
        }
    }
}

pub fn resolve(name: &str) -> Result<Resolved> {
    let trimmed = name.trim();
    if let Some(g) = named::by_name(trimmed) {
        return Ok(Resolved::Named(trimmed.to_string(), g));
    }
    let spec = Catalog::load_default()?.find(trimmed).map_err(|_| Error::UnknownGroup(trimmed.to_string()))?;
    Ok(Resolved::Catalog(Box::new(spec.realize()?)))
}
