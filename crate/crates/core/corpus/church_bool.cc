def CBool : Type 1 := (X : Type 0) -> X -> X -> X;
def tt : CBool := fun (X : Type 0) (t f : X) => t;
def not : CBool -> CBool := fun (b : CBool) (X : Type 0) (t f : X) => b X f t;
main not tt Nat 1 0;
