#include "commands.hpp"

#include "linea/parallel.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    linea::apply_thread_limit_from_env();
    return linea::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
