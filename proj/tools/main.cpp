#include "strictq/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return strictq::run(argc, argv, std::cout, std::cerr);
}
