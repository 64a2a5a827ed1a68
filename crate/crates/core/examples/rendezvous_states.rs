//! Counts the reachable states of the rendezvous instance by enumeration.

use costlab::domains::{count_reachable, make_rendezvous};
use costlab::eval::epsilon_of;
use costlab::problem::Problem;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let instance = make_rendezvous(1)?;
    let states = count_reachable(&instance, 1_000_000)?;
    println!("{}: {states} reachable states", instance.describe());
    println!("closed form 5^4 * 9^2 = {}", 5u64.pow(4) * 9u64.pow(2));
    println!("action cost ratio {:?}", epsilon_of(&instance));
    Ok(())
}
