//! Fibonacci (Zeckendorf) and Fibonacci's complement numeration systems.
//!
//! Nonnegative integers are written in the Zeckendorf system and all of
//! `ℤ` in the Fibonacci's complement system, the Fibonacci analogue of two's
//! complement. Both are added by the same left-to-right transducer: the
//! Berstel adder, and a variant of it with one extra initial state. The
//! adder can also be rebuilt from scratch by exploring equivalence classes
//! of ternary words, see [`derivation`].

pub mod adders;
pub mod complement;
pub mod derivation;
pub mod error;
pub mod fib;
pub mod mealy;
pub mod verify;
pub mod word;
pub mod zeckendorf;

pub use adders::{add_f, add_fc, berstel, modified, sub_fc};
pub use complement::{rep_fc, FcWord};
pub use error::{DerivationError, DomainError, Error, MachineError, Result, RunError};
pub use fib::{fib, val_2c, val_f, val_fc};
pub use mealy::MealyMachine;
pub use word::{Digit, Word};
pub use zeckendorf::{rep_f, ZeckWord};
