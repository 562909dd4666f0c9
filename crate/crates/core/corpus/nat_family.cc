-- A type family over functions. The type of `a (fun x => 1 + x)` mentions
-- a function that appears in neither the context nor the term.
axiom A : (Nat -> Nat) -> Type 0;
axiom a : (f : Nat -> Nat) -> A (fun (n : Nat) => add 1 (f n));
main a (fun (x : Nat) => add 1 x);
