#include "dhat/freeomega.hpp"
#include <cstdio>
#include <map>
using namespace dhat;
int main(){auto c=GeneratorComplex::cube(3);auto u=generate_cells(c,{16,20000,true});std::map<int,int> h;for(int i=0;i<u.cell_count();++i)h[u.cell(i).dim]++;for(auto&[d,n]:h)printf("dim %d: %d\n",d,n);return 0;}
