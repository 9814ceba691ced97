//! Refactoring suggestions attached to each reported kind.

use gamesmell_core::{Finding, Kind, PatternKind, SmellKind};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Advice {
    pub kind: Kind,
    pub title: &'static str,
    pub body: &'static str,
}

fn text(kind: Kind) -> &'static str {
    match kind {
        Kind::Pattern(PatternKind::P1) => {
            "Split the per-component calls into separate functions (one for graphics, one for audio, and so on) \
             so each engine component can change without touching the others."
        }
        Kind::Pattern(PatternKind::P2) => {
            "Introduce an EventQueue class with Add() and PublishEvents(). Producers call Add() when an input or \
             storage event arrives; the game loop calls PublishEvents() once per frame to dispatch them."
        }
        Kind::Pattern(PatternKind::P3) => {
            "Store the fields in a contiguous array layout (an Array or typed array indexed by field) instead of \
             separate object properties, so hot reads stay close together in memory."
        }
        Kind::Pattern(PatternKind::P4) => {
            "Keep reusable instances in an object pool: fetch() an instance instead of allocating, and recycle() \
             it when done, so the hot path stops creating garbage."
        }
        Kind::Smell(SmellKind::S1) => "Flatten deeply nested functions and give shadowed or `this`-dependent names distinct bindings.",
        Kind::Smell(SmellKind::S2) => "Move inline scripts, HTML strings and style rules into their own JS, template and CSS files.",
        Kind::Smell(SmellKind::S3) => {
            "Handle the exception: log it, recover, or rethrow. An empty catch gives the failure no response at all."
        }
        Kind::Smell(SmellKind::S4) => "Group game state under a single namespace object or module instead of separate globals.",
        Kind::Smell(SmellKind::S5) => "Divide the object into smaller modules, each owning one responsibility.",
        Kind::Smell(SmellKind::S6) => "Merge the object into a related one, or remove it if it adds no behavior.",
        Kind::Smell(SmellKind::S7) => "Hide the navigation behind a method on the first object instead of chaining through its internals.",
        Kind::Smell(SmellKind::S8) => "Extract cohesive blocks of the function into named helpers.",
        Kind::Smell(SmellKind::S9) => "Pass a single options object, or split the function so it needs fewer inputs.",
        Kind::Smell(SmellKind::S10) => "Replace nested callbacks with named functions, promises or async/await.",
        Kind::Smell(SmellKind::S11) => "Prefer composition, or move the unused members out of the parent.",
        Kind::Smell(SmellKind::S12) => "Replace the switch with a lookup table or polymorphic handlers.",
        Kind::Smell(SmellKind::S13) => "Delete the unreachable statements and unused declarations.",
    }
}

pub fn advice_for(kind: Kind) -> Advice {
    Advice { kind, title: kind.name(), body: text(kind) }
}

pub fn advise(finding: &Finding) -> Advice {
    advice_for(finding.kind)
}
