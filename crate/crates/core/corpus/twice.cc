def twice : (A : Type 0) -> (A -> A) -> A -> A := fun (A : Type 0) (f : A -> A) (x : A) => f (f x);
main twice Nat (fun (n : Nat) => add n 3) 1;
