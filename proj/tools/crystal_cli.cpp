#include <iostream>

int main() {
    std::cout << "crystal-cli placeholder\n";
    return 0;
}
