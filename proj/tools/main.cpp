#include <iostream>

int main() {
  std::cout << "ctrlmetrics (work in progress)\n";
  return 0;
}
