-- An eta-expanded variable.
axiom f : Nat -> Nat;
main fun (x : Nat) => f x;
