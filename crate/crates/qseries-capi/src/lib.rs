//! Placeholder to make the scaffold build.
