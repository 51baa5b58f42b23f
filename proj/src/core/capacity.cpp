namespace erbm {}
