use crate::complex::TriangulatedSurface;

use super::generate::{GenerateError, Generator};

/// A named surface with a provenance string that reproduces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    /// Subdivision family the entry belongs to, if any.
    pub family: Option<String>,
    /// A generator expression, or `file:<path>` for surfaces read from disk.
    pub provenance: String,
    pub surface: TriangulatedSurface,
}

impl CorpusEntry {
    pub fn generated(generator: &Generator) -> Result<Self, GenerateError> {
        Ok(CorpusEntry {
            name: generator.to_string(),
            family: None,
            provenance: generator.to_string(),
            surface: generator.generate()?,
        })
    }

    pub fn in_family(mut self, family: impl Into<String>) -> Self {
        self.family = Some(family.into());
        self
    }
}

/// Flips applied to the base of each seeded subdivision family.
pub const FAMILY_FLIPS: usize = 6;
/// Subdivision rounds 0 through this value form one family.
pub const FAMILY_ROUNDS: usize = 4;

/// Bases of the subdivision families: two tori and a genus-2 surface. The
/// Császár torus is absent because its 1-skeleton is complete and admits
/// no flip.
pub fn family_bases() -> Vec<Generator> {
    vec![
        Generator::GridTorus { k: 3 },
        Generator::GridTorus { k: 4 },
        Generator::TorusSum { genus: 2 },
    ]
}

/// `subdivide(random-flips(base, FAMILY_FLIPS, seed), r)` for
/// `r = 0..=FAMILY_ROUNDS`.
pub fn subdivision_family(base: &Generator, seed: u64) -> Vec<Generator> {
    let flipped = Generator::RandomFlips {
        base: Box::new(base.clone()),
        count: FAMILY_FLIPS,
        seed,
    };
    (0..=FAMILY_ROUNDS)
        .map(|rounds| Generator::Subdivide {
            base: Box::new(flipped.clone()),
            rounds,
        })
        .collect()
}

/// The default verification corpus. Surfaces span genus 0 to 6; only the
/// subdivision-family bases depend on `seed`.
pub fn default_corpus(seed: u64) -> Result<Vec<CorpusEntry>, GenerateError> {
    let mut plain = vec![Generator::SphereTetra, Generator::CsaszarTorus];
    plain.extend((3..=6).map(|k| Generator::GridTorus { k }));
    plain.extend((1..=6).map(|genus| Generator::TorusSum { genus }));
    plain.extend((2..=6).map(|genus| Generator::GenusPolygon { genus, rounds: 2 }));
    plain.push(Generator::Subdivide {
        base: Box::new(Generator::TorusSum { genus: 3 }),
        rounds: 2,
    });
    plain.extend((1..=3).map(|offset| Generator::Twist {
        base: Box::new(Generator::Subdivide {
            base: Box::new(Generator::GridTorus { k: 4 }),
            rounds: 1,
        }),
        offset,
    }));
    let mut entries = plain
        .iter()
        .map(CorpusEntry::generated)
        .collect::<Result<Vec<_>, _>>()?;
    for base in family_bases() {
        let family = format!("subdivide({base})");
        for g in subdivision_family(&base, seed) {
            entries.push(CorpusEntry::generated(&g)?.in_family(family.clone()));
        }
    }
    Ok(entries)
}
