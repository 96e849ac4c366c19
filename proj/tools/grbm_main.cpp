#include "CLI11.hpp"
int main() { return 0; }
