def flip : (A B C : Type 0) -> (A -> B -> C) -> B -> A -> C :=
  fun (A B C : Type 0) (f : A -> B -> C) (y : B) (x : A) => f x y;
main flip Nat Nat Nat (fun (a b : Nat) => add a (add b b)) 1 2;
