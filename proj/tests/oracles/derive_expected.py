from mpmath import mp, mpf, exp, log, sinh, sqrt, sin, pi, tanh, cosh, factorial, nsum, inf
mp.dps = 40
# thermal chi
for nb in [mpf('0.7'), mpf('0.1')]:
    print('thermal', nb, nb**0/(nb+1), nb/(nb+1)**2)
print('coh a=1 chi0,chi1', exp(-1), exp(-1))
print('sinh^2(1)', sinh(1)**2)
# squeezed moments brute force
r=mpf(1); t=tanh(r)
chi=lambda k: factorial(2*k)/(2**k*factorial(k))**2*t**(2*k)/cosh(r)
s=nsum(chi,[0,inf]); m1=nsum(lambda k:2*k*chi(k),[0,inf]); m2=nsum(lambda k:(2*k)**2*chi(k),[0,inf])
print('sq sum',s,'mean',m1,'m2',m2,'3m^2+2m',3*m1**2+2*m1,'A mean after',m2/m1-1,'3m+1',3*m1+1)
# thermal nbar=0.5 Q by summation
nb=mpf('0.5'); c=lambda n: nb**n/(nb+1)**(n+1)
mean=nsum(lambda n:n*c(n),[0,inf]); m2=nsum(lambda n:n*n*c(n),[0,inf]); print('thermal Q', (m2-mean**2)/mean-1)
nb=mpf('0.7'); c=lambda n: nb**n/(nb+1)**(n+1); print('mean 0.7',nsum(lambda n:n*c(n),[0,inf]))
x0=exp(-1); print('P0E coh', x0*(-log(x0))/(1-x0), 'P1E coh', x0*log(x0)**2/(2*(1-x0)))
for c1 in [mpf('0.24'), mpf('0.09'), mpf('0.1')]:
    print('branches', c1, mpf(1)/2+sqrt(mpf(1)/4-c1), mpf(1)/2-sqrt(mpf(1)/4-c1))
x0=mpf(1)/2+sqrt(mpf('0.15')); print('thermal P(n>=2) at chi1=0.1 upper', (1-x0)**2, 'chi2', x0*(1-x0)**2)
print('excitation thermal 1 y=1', nsum(lambda n: sin(sqrt(n))**2/2**(n+1), [0,inf]))
# asymptotic ratio at chi0=0.999
x0=mpf('0.999')
print('ratio thermal', (x0*(1-x0))/(2*x0**2*(1-x0)), 'ratio coh', (x0*log(x0)**2/(2*(1-x0)))/(x0*(-log(x0))))
# fig4 P0H at chi0=0.6 y=2 etc
x0=mpf('0.6'); ch=lambda n: x0*(1-x0)**n
for y in [mpf(1), mpf(2), mpf('7.3')]:
    den=nsum(lambda n: sin(y*sqrt(n))**2*ch(n),[1,inf])
    print('H y',y,'P0',sin(y)**2*ch(1)/den,'P1',sin(y*sqrt(2))**2*ch(2)/den)
