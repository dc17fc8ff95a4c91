#include <iostream>

int main() {
    std::cout << "defectont\n";
    return 0;
}
