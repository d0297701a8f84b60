pub mod abgroup;
pub mod covers;
pub mod example;
pub mod finitegroup;
pub mod orbifold;
pub mod parabolic;
pub mod reptheory;
