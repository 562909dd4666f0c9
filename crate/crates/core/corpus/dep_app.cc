axiom P : Nat -> Type 0;
axiom p : (n : Nat) -> P n;
main (fun (n : Nat) => p (add n 1)) 2;
